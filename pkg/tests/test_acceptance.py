"""Acceptance criteria, one test each, each printing a single PASS/FAIL line.

The lines are also collected into ``RESULTS`` and repeated in the pytest
terminal summary.  Run this file directly to print them without pytest.
"""

import random
import time
from pathlib import Path

from oracles import binary_trees, count_leaves, floyd_warshall, shortest_word_bfs, tree_counts_by_length
from semifix.fixpoint import EquationSystem, SemiringMatrix, kleene_fixpoint, repetition
from semifix.laws import (
    check_cd_axioms,
    check_conway,
    check_fixpoint_rules,
    check_linearity_lemmas,
    check_monus,
    check_relmodel,
    check_repetition,
)
from semifix.newton import check_sandwich, newton_solve
from semifix.problems import parse_system, read_grammar
from semifix.semiring import INF, TROPICAL
from semifix.series import tuple_equal

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
RESULTS = []


def corpus_systems(degree=None):
    """Every solvable corpus file as ``(name, EquationSystem)``."""
    out = []
    for path in sorted(CORPUS.glob("*.eqn")):
        out.append((path.name, parse_system(path.read_text(), degree=degree)))
    for path in sorted(CORPUS.glob("*.cfg")):
        out.append((path.name, read_grammar(path.read_text()).system(degree=degree)))
    return out


def _failed(reports):
    return [f"{r.law_name}: {len(r.failures)} failures" for r in reports if not r.passed]


def _cases(reports):
    return min(r.cases_run for r in reports)


def accept(number, title, fn, limit=None):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; over the {limit:g} s budget"
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail} ({elapsed:.2f} s)"
    RESULTS.append(line)
    print(line)
    assert ok, line


# -- the criteria -----------------------------------------------------------------------


def cd_axioms():
    bad, shown = [], []
    for sr in ("nat", "bool", "real"):
        reports = check_cd_axioms(0, 200, sr, 4)
        assert len(reports) == 7
        if any(r.cases_run < 200 for r in reports):
            bad.append(f"{sr}: fewer than 200 cases")
        bad += [f"{sr} {m}" for m in _failed(reports)]
        shown.append(f"{sr} tol={reports[0].tolerance_used}")
    return not bad, "; ".join(bad) or f"CD.1-CD.7 x 200 cases on {', '.join(shown)}"


def fixpoint_rules():
    reports = check_fixpoint_rules(0, 100, "nat", 6)
    bad = _failed(reports) + [f"{r.law_name}: {r.skipped} skipped" for r in reports if r.skipped]
    return not bad, "; ".join(bad) or f"three rules agree on {_cases(reports)} guarded systems, D=6, exact"


def conway():
    reports = {r.law_name: r for r in check_conway(0, 100, "nat", 5)}
    wanted = [reports["dinaturality"], reports["Bekic"]]
    bad = _failed(reports.values()) + [f"{r.law_name}: only {r.cases_run} cases" for r in wanted if r.cases_run < 100]
    return not bad, "; ".join(bad) or "dinaturality and Bekic on 100 systems each, D=5, exact"


def monus():
    bad, sizes = [], []
    for sr, n in (("bool", 1000), ("nat", 1000), ("tropical", 1000)):
        reports = check_monus(0, n, sr)
        bad += [f"{sr} {m}" for m in _failed(reports)]
        sizes.append(f"{sr} {_cases(reports)}")
    return not bad, "; ".join(bad) or f"7 laws; cases per law: {', '.join(sizes)} (bool exhaustive)"


def repetition_axioms():
    bad = []
    for sr in ("bool", "tropical"):
        reports = check_repetition(0, 100, sr, 0, max_dim=4)
        bad += [f"{sr} {m}" for m in _failed(reports)]
    rng = random.Random("acceptance-fw")
    mismatches = 0
    for _ in range(50):
        w = [[rng.randint(0, 20) if rng.random() < 0.4 else INF for _ in range(8)] for _ in range(8)]
        m = SemiringMatrix.from_values(TROPICAL, w)
        want = floyd_warshall(w)
        mismatches += m.star().values() != want or repetition(m).values() != want
    if mismatches:
        bad.append(f"{mismatches}/50 8x8 instances differ from Floyd-Warshall")
    return not bad, "; ".join(bad) or "axioms and induction on 100 matrices (bool, tropical, dim <= 4); 50/50 8x8 match Floyd-Warshall"


def binary_trees_solvers():
    sys = EquationSystem.from_text("nat", ("z",), ("B",), ["z + z*B^2"], 9)
    by_leaves = binary_trees(5)
    oracle = [sum(1 for t in by_leaves[n] if count_leaves(t) == n) for n in range(1, 6)]
    got = {}
    got["kleene"] = kleene_fixpoint(sys).solution[0]
    got["newton"] = newton_solve(sys).solution[0]
    bad = []
    for name, s in got.items():
        odd = [s.coefficient((k,)) for k in (1, 3, 5, 7, 9)]
        even = [s.coefficient((k,)) for k in (0, 2, 4, 6, 8)]
        if odd != oracle or odd != [1, 1, 2, 5, 14] or any(even):
            bad.append(f"{name} gave {odd}")
    return not bad, "; ".join(bad) or f"kleene and newton give {oracle} at z^1..z^9, matching tree enumeration"


def newton_sandwich():
    bad = []
    systems = corpus_systems()
    for name, sys in systems:
        rep = newton_solve(sys)
        if not tuple_equal(rep.solution, rep.kleene.solution):
            bad.append(f"{name}: solutions differ")
        steps = check_sandwich(sys, rep)
        if steps:
            bad.append(f"{name}: sandwich fails at steps {steps}")
    return not bad, "; ".join(bad) or f"sandwich and agreement on all {len(systems)} corpus systems"


def quadratic_rate():
    bad, used = [], []
    for name, sys in corpus_systems(63):
        rep = newton_solve(sys)
        if not rep.rate_applicable:
            continue
        used.append(name)
        exps = [d.exponent for d in rep.distances]
        for n, (a, b) in enumerate(zip(exps, exps[1:])):
            if b is not None and b < 2 * a:
                bad.append(f"{name}: exponent {b} < 2*{a} at step {n + 1}")
        if rep.iterations > 8 or rep.kleene_baseline_iterations < 32:
            bad.append(f"{name}: newton {rep.iterations} steps, kleene {rep.kleene_baseline_iterations}")
    if len(used) < 3:
        bad.append(f"only {len(used)} corpus systems satisfy the hypotheses")
    return not bad, "; ".join(bad) or f"D=63, exponents double on {', '.join(used)}; newton <= 8 steps, kleene >= 32"


def linearity():
    reports = {r.law_name: r for r in check_linearity_lemmas(0, 100, "nat", 4)}
    wanted = [reports["fixpoint of a linear map is linear"], reports["fixpoint of a map linear in X is zero"]]
    bad = _failed(reports.values()) + [f"{r.law_name}: only {r.cases_run} cases" for r in wanted if r.cases_run < 100]
    return not bad, "; ".join(bad) or "100 linear systems give linear fixpoints; 100 linear-in-X systems give zero"


def relational():
    reports = check_relmodel(0, 50, "nat", 4)
    bad = _failed(reports)
    names = {r.law_name for r in reports}
    for needed in ("composition matches substitution", "derivative matches series derivative",
                   "fixpoint matches Kleene on series", "coKleisli unit laws (exhaustive)",
                   "coKleisli associativity (exhaustive)"):
        if needed not in names:
            bad.append(f"missing {needed}")
    return not bad, "; ".join(bad) or f"{len(reports)} checks, 50 random instances, sizes <= 2, cap 4, exhaustive comonad laws"


GRAMMARS = {
    "catalan.cfg": {"S": [("S", "S"), ("a",)]},
    "anbn.cfg": {"S": [("a", "S", "b"), ()]},
    "palindromes.cfg": {"S": [("a", "S", "a"), ("b", "S", "b"), ("a",), ("b",), ()]},
    "ambiguous.cfg": {"S": [("i", "S"), ("i", "S", "e", "S"), ("o",)]},
    "expr.cfg": {
        "E": [("E", "p", "T"), ("T",)],
        "T": [("T", "m", "F"), ("F",)],
        "F": [("l", "E", "r"), ("x",)],
    },
}


def grammar_corpus():
    bad = []
    g = read_grammar((CORPUS / "catalan.cfg").read_text())
    (s,) = kleene_fixpoint(g.system(semiring="nat", degree=8)).solution
    counts = [s.coefficient((k,)) for k in range(9)]
    if counts != tree_counts_by_length(GRAMMARS["catalan.cfg"], "S", 8):
        bad.append(f"catalan counts {counts}")
    shortest = []
    for name, prods in GRAMMARS.items():
        g = read_grammar((CORPUS / name).read_text()).unit_costs()
        sys = g.system(semiring="tropical", degree=0)
        sol = dict(zip(sys.unknowns, kleene_fixpoint(sys).solution))
        got = sol[g.start].constant_term()
        want = shortest_word_bfs(prods, g.start, 8)
        shortest.append(f"{name[:-4]}={got}")
        if got != (INF if want is None else want):
            bad.append(f"{name}: tropical {got}, search {want}")
    return not bad, "; ".join(bad) or f"S -> S S | a counts {counts}; shortest words {' '.join(shortest)}"


# -- tests ------------------------------------------------------------------------------


def test_01_cd_axioms():
    accept(1, "CD axioms", cd_axioms, limit=30)


def test_02_fixpoint_rule_equivalence():
    accept(2, "fixpoint-rule equivalence", fixpoint_rules, limit=60)


def test_03_conway():
    accept(3, "Conway suite", conway)


def test_04_monus():
    accept(4, "monus laws", monus)


def test_05_repetition():
    accept(5, "repetition axioms and induction", repetition_axioms)


def test_06_binary_trees():
    accept(6, "binary-tree system", binary_trees_solvers, limit=1)


def test_07_newton_sandwich():
    accept(7, "Newton sandwich and agreement", newton_sandwich)


def test_08_quadratic_rate():
    accept(8, "quadratic rate", quadratic_rate, limit=10)


def test_09_linearity():
    accept(9, "linearity lemmas", linearity)


def test_10_relational():
    accept(10, "relational cross-check", relational, limit=60)


def test_11_grammar_corpus():
    accept(11, "grammar corpus", grammar_corpus)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass

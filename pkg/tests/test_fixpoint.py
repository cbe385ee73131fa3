import random

import pytest

from oracles import boolean_closure, floyd_warshall
from semifix.errors import ContextError, DivergenceError
from semifix.fixpoint import (
    EquationSystem,
    SemiringMatrix,
    iteration_cap,
    kleene_fixpoint,
    matrix_star,
    repetition,
    trace,
)
from semifix.semiring import BOOL, INF, NAT, REAL, TROPICAL
from semifix.series import Context


def solve(eqs, unknowns, params=("z",), D=8, sr="nat"):
    sys = EquationSystem.from_text(sr, params, unknowns, eqs, D)
    return kleene_fixpoint(sys)


def test_binary_trees_odd_catalan():
    (b,) = solve(["z + z*B^2"], ("B",), D=9).solution
    assert [b.coefficient((k,)) for k in range(10)] == [0, 1, 0, 1, 0, 2, 0, 5, 0, 14]


def test_geometric_even_powers():
    (s,) = solve(["1 + z^2*S"], ("S",), D=6).solution
    assert str(s) == "1 + z^2 + z^4 + z^6"


@pytest.mark.parametrize("sr", ["bool", "nat", "tropical", "real", "viterbi"])
def test_identity_has_least_solution_zero(sr):
    report = solve(["X"], ("X",), sr=sr)
    assert report.solution[0].is_zero()
    assert report.iterations == 1


def test_solution_is_a_fixpoint():
    sys = EquationSystem.from_text("nat", ("z",), ("E", "O"), ["z + z*O^2", "z*E + z*E*O"], 10)
    y = kleene_fixpoint(sys).solution
    assert sys.apply(y) == y


def test_divergence_carries_last_iterate():
    sys = EquationSystem.from_text("nat", ("z",), ("X",), ["1 + X"], 3)
    assert not sys.guarded
    with pytest.raises(DivergenceError) as info:
        kleene_fixpoint(sys)
    err = info.value
    assert err.iterations == iteration_cap(3, 1) == 16
    assert err.last[0].constant_term() == 16


def test_boolean_reachability_is_guarded_semantically():
    sys = EquationSystem.from_text("bool", ("z",), ("X",), ["1 + X"], 3)
    assert sys.guarded
    assert str(kleene_fixpoint(sys).solution[0]) == "1"


def test_distances_are_non_increasing():
    report = solve(["z + z*B^2"], ("B",), D=12)
    dists = report.per_iteration_distance
    assert all(b <= a for a, b in zip(dists, dists[1:]))
    assert report.per_iteration_distance[-1].identical


def test_solve_report_csv():
    report = solve(["z + z*B^2"], ("B",), D=3)
    lines = report.to_csv().splitlines()
    assert lines[0] == "step,distance_exponent,rate_ok"
    assert lines[1] == "0,1,na"
    assert lines[-1].endswith(",identical,na")


def test_system_validation():
    ctx = Context(NAT, ("z", "X"), 3)
    with pytest.raises(ContextError):
        EquationSystem(("z",), ("X", "Y"), [ctx.var("X")])
    with pytest.raises(ContextError):
        EquationSystem(("X",), ("X",), [ctx.var("X")])
    other = Context(NAT, ("w", "X"), 3)
    with pytest.raises(ContextError, match="undeclared"):
        EquationSystem(("z",), ("X",), [other.var("w")])


# -- matrix star --------------------------------------------------------------------


def test_star_of_scalar():
    ctx = Context(NAT, ("z",), 2)
    m = SemiringMatrix([[ctx.var("z")]])
    assert str(matrix_star(m)) == "[1 + z + z^2]"


def test_boolean_closure_example():
    m = SemiringMatrix.from_values(BOOL, [[False, True], [False, False]])
    assert m.star().values() == [[True, True], [False, True]]


def _random_adjacency(rng, n):
    return [[rng.random() < 0.3 for _ in range(n)] for _ in range(n)]


def test_boolean_star_matches_path_enumeration():
    rng = random.Random(1)
    for n in range(1, 7):
        for _ in range(20):
            adj = _random_adjacency(rng, n)
            star = SemiringMatrix.from_values(BOOL, adj).star()
            assert star.values() == boolean_closure(adj)


def _random_weights(rng, n):
    return [[rng.randint(0, 9) if rng.random() < 0.5 else INF for _ in range(n)] for _ in range(n)]


def test_tropical_star_matches_floyd_warshall():
    rng = random.Random(2)
    for n in range(1, 9):
        for _ in range(10):
            w = _random_weights(rng, n)
            m = SemiringMatrix.from_values(TROPICAL, w)
            assert m.star().values() == floyd_warshall(w)
            assert repetition(m).values() == floyd_warshall(w)


def test_star_unfolds_and_split_is_irrelevant():
    rng = random.Random(3)
    ctx = Context(NAT, ("z",), 4)
    for n in range(2, 6):
        rows = [[ctx.parse(rng.choice(["0", "z", "2*z", "1 + z", "z^2"])) for _ in range(n)] for _ in range(n)]
        m = SemiringMatrix(rows)
        s = m.star()
        assert s == SemiringMatrix.identity(ctx, n) + m * s
        for k in range(1, n):
            assert matrix_star(m, k) == s
        assert matrix_star(m, lambda d: 1) == s


def test_tropical_negative_cycle_free_star_diagonal_is_zero():
    m = SemiringMatrix.from_values(TROPICAL, [[3, 1], [INF, 5]])
    assert m.star().values() == [[0, 1], [INF, 0]]


def test_nat_star_saturates():
    m = SemiringMatrix.from_values(NAT, [[1]])
    assert m.star().values() == [[INF]]


def test_real_star_matches_inverse():
    m = SemiringMatrix.from_values(REAL, [[0.5, 0.25], [0.0, 0.5]])
    # (I - M)^-1 = [[2, 1], [0, 2]]
    got = m.star().values()
    for row, want in zip(got, [[2.0, 1.0], [0.0, 2.0]]):
        assert row == pytest.approx(want)


# -- trace ------------------------------------------------------------------------------


def test_trace_ignoring_the_wire():
    ctx = Context(NAT, ("a", "z", "x"), 5)
    (out,) = trace([ctx.var("a"), ctx.parse("z*x + a")], 1, ("x",))
    assert str(out) == "a"


def test_trace_feedback_is_geometric():
    ctx = Context(NAT, ("a", "z", "x"), 5)
    (out,) = trace([ctx.var("x"), ctx.parse("z*x + a")], 1, ("x",))
    assert str(out) == "a + a*z + a*z^2 + a*z^3 + a*z^4"


def test_yanking():
    # swap <x, a> traced on its second wire is the identity on a
    ctx = Context(NAT, ("a", "x"), 4)
    (out,) = trace([ctx.var("x"), ctx.var("a")], 1, ("x",))
    assert out == Context(NAT, ("a",), 4).var("a")


# -- repetition -------------------------------------------------------------------------


def test_repetition_of_zero_is_identity():
    ctx = Context(NAT, ("z",), 3)
    assert repetition(SemiringMatrix.zeros(ctx, 3)) == SemiringMatrix.identity(ctx, 3)


def test_repetition_of_two_widens_to_infinity():
    m = SemiringMatrix.from_values(NAT, [[2]])
    assert repetition(m).values() == [[INF]]


def test_repetition_of_nilpotent_is_finite_sum():
    n = SemiringMatrix.from_values(NAT, [[0, 2, 1], [0, 0, 3], [0, 0, 0]])
    i = SemiringMatrix.identity(n.ctx, 3)
    expect = i + n + n * n
    assert repetition(n) == expect
    assert matrix_star(n) == expect
    assert expect.values() == [[1, 2, 7], [0, 1, 3], [0, 0, 1]]


def test_repetition_matches_star_on_series_entries():
    rng = random.Random(4)
    ctx = Context(NAT, ("z",), 3)
    for _ in range(20):
        n = rng.randint(1, 3)
        rows = [[ctx.parse(rng.choice(["0", "z", "2*z", "z^2", "1"])) for _ in range(n)] for _ in range(n)]
        m = SemiringMatrix(rows)
        assert repetition(m) == matrix_star(m)

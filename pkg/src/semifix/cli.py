"""``semifix`` command line: ``solve``, ``grammar`` and ``laws``.

Exit codes: 0 success, 1 usage or parse error, 2 divergence, 3 law failure.
"""

import argparse
import sys

from .errors import ContextError, DivergenceError, DomainError, ParseError
from .fixpoint import kleene_fixpoint
from .laws import SUITES, run_suite
from .newton import newton_solve
from .problems import read_grammar, read_problem
from .semiring import SEMIRINGS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DIVERGENCE = 2
EXIT_LAW_FAILURE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _non_negative(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text):
    v = _non_negative(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser():
    p = _Parser(prog="semifix", description="Solve polynomial fixpoint systems over semirings.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name, what in (("solve", "an equation file"), ("grammar", "a grammar file")):
        s = sub.add_parser(name, help=f"solve {what}")
        s.add_argument("path", help=f"{what} ('-' reads standard input)")
        s.add_argument("--method", choices=("kleene", "newton"), default="kleene")
        s.add_argument("--semiring", choices=tuple(SEMIRINGS), help="override the file's semiring")
        s.add_argument("--degree", type=_non_negative, help="override the truncation degree")
        s.add_argument("--trace", metavar="PATH", help="write the convergence trace as CSV ('-' for stdout)")
    la = sub.add_parser("laws", help="run a seeded law-check suite")
    la.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    la.add_argument("--seed", type=int, default=0)
    la.add_argument("--cases", type=_positive, default=100)
    la.add_argument("--semiring", choices=tuple(SEMIRINGS), default="nat")
    la.add_argument("--degree", type=_non_negative, default=4)
    return p


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def format_table(unknowns, solution):
    """Coefficient table in graded-lex order, one row per nonzero coefficient."""
    rows = [("unknown", "degree", "monomial", "coefficient")]
    for x, s in zip(unknowns, solution):
        sr = s.semiring
        for e, c in s.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(s.ctx.names, e) if k) or "1"
            rows.append((x, str(sum(e)), mono, sr.format(c)))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return "\n".join("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def _write_trace(path, text, out):
    if path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _solve(sys_, method, trace, out, header):
    out.write(header)
    try:
        if method == "newton":
            rep = newton_solve(sys_)
            out.write(
                f"# newton: {rep.steps_to_solution} steps to the solution, "
                f"{rep.iterations} including the confirming step; "
                f"kleene baseline {rep.kleene_baseline_iterations} iterations\n"
            )
            if rep.rate_applicable:
                ok = all(rep.rate_check)
                out.write(f"# quadratic rate check: {'pass' if ok else 'FAIL'}\n")
            else:
                out.write("# quadratic rate check: not applicable (f(0,0) != 0 or Jacobian not nilpotent)\n")
            csv = rep.to_csv()
        else:
            rep = kleene_fixpoint(sys_)
            out.write(f"# kleene: {rep.iterations} iterations\n")
            csv = rep.to_csv()
    except DivergenceError as exc:
        out.write(f"# diverged after {exc.iterations} iterations; partial iterate follows\n")
        if exc.last is not None:
            out.write(format_table(sys_.unknowns, exc.last))
        print(f"semifix: divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    out.write(format_table(sys_.unknowns, rep.solution))
    if trace:
        _write_trace(trace, csv, out)
    return EXIT_OK


def _system_header(sys_):
    lines = [f"# semiring {sys_.semiring.name}, truncate {sys_.degree}"]
    if sys_.params:
        lines.append(f"# params {' '.join(sys_.params)}")
    for x, q in zip(sys_.unknowns, sys_.rhs):
        lines.append(f"# {x} = {q}")
    return "\n".join(lines) + "\n"


def run_solve(args, out):
    prob = read_problem(_read(args.path))
    sys_ = prob.system(args.semiring, args.degree)
    return _solve(sys_, args.method, args.trace, out, _system_header(sys_))


def run_grammar(args, out):
    g = read_grammar(_read(args.path))
    sys_ = g.system(args.semiring, args.degree)
    header = _system_header(sys_) + f"# start {g.start}\n"
    return _solve(sys_, args.method, args.trace, out, header)


def run_laws(args, out):
    reports = run_suite(args.suite, args.seed, args.cases, args.semiring, args.degree)
    failed = 0
    for r in reports:
        out.write(str(r) + "\n")
        failed += not r.passed
    out.write(f"{len(reports)} laws checked, {failed} failed\n")
    return EXIT_OK if not failed else EXIT_LAW_FAILURE


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK
    handler = {"solve": run_solve, "grammar": run_grammar, "laws": run_laws}[args.command]
    try:
        return handler(args, out)
    except (ParseError, ContextError, DomainError, ValueError, OSError) as exc:
        print(f"semifix: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Newton iteration for polynomial fixpoint systems.

The Newton operator sends an approximant ``z`` to

    z + J(z)* . (f(z) - z)

where ``J(z)`` is the Jacobian of the right-hand sides with respect to the
unknowns, evaluated at ``z``, ``*`` is the matrix star and ``-`` is truncated
subtraction.  Starting at zero the approximants form an increasing chain that
is squeezed between the Kleene iterates and the least fixpoint.

:func:`newton_solve` always computes the Kleene solution first and measures
every approximant against it; Newton never certifies itself.
"""

from dataclasses import dataclass, field

from .differential import partial, tuple_distance
from .errors import DivergenceError
from .fixpoint import SemiringMatrix, iteration_cap, kleene_fixpoint, matrix_star
from .series import tuple_equal, tuple_leq

__all__ = [
    "jacobian",
    "newton_step",
    "NewtonReport",
    "newton_solve",
    "NilpotenceCertificate",
    "check_nilpotent",
    "check_sandwich",
]


def jacobian(sys, at):
    """Entries ``d rhs_i / d x_j`` with the unknowns replaced by ``at``."""
    at = tuple(at)
    b = sys.bindings(at)
    rows = []
    for q in sys.rhs:
        row = []
        for x in sys.unknowns:
            row.append(partial(q, x).substitute(b, sys.param_ctx))
        rows.append(row)
    return SemiringMatrix(rows, sys.param_ctx)


def newton_step(sys, z):
    z = tuple(z)
    fz = sys.apply(z)
    delta = tuple(p.monus(q) for p, q in zip(fz, z))
    if all(d.is_zero() for d in delta):
        return z
    star = matrix_star(jacobian(sys, z))
    corr = star.apply(delta)
    return tuple(p + c for p, c in zip(z, corr))


@dataclass(frozen=True)
class NilpotenceCertificate:
    """``order`` is the least ``p`` with ``J^p = 0`` modulo ``D``, or ``None``."""

    order: object = None

    @property
    def nilpotent(self):
        return self.order is not None

    def __str__(self):
        return "not nilpotent within degree bound" if self.order is None else f"order {self.order}"


def check_nilpotent(sys, at):
    j = jacobian(sys, at)
    bound = sys.degree + 1
    power = j
    for p in range(1, bound + 1):
        if power.is_zero():
            return NilpotenceCertificate(p)
        power = power * j
    return NilpotenceCertificate(None)


@dataclass
class NewtonReport:
    solution: tuple
    approximants: list
    distances: list
    kleene_baseline_iterations: int
    rate_check: list
    iterations: int = 0
    steps_to_solution: int = 0
    rate_applicable: bool = False
    certificates: list = field(default_factory=list, repr=False)
    kleene: object = field(default=None, repr=False)

    def to_csv(self):
        lines = ["step,distance_exponent,rate_ok"]
        for i, d in enumerate(self.distances):
            if i == 0 or self.rate_check[i - 1] is None:
                flag = "na"
            else:
                flag = "true" if self.rate_check[i - 1] else "false"
            lines.append(f"{i},{d},{flag}")
        return "\n".join(lines) + "\n"


def _rate_ok(prev, cur):
    """``d(next) <= d(prev)^2``, i.e. next exponent at least twice the previous one."""
    if cur.identical:
        return True
    if prev.identical:
        return False
    return cur.exponent >= 2 * prev.exponent


def newton_solve(sys, cap=None):
    """Newton approximants from zero until two successive ones agree modulo ``D``.

    The rate check is only evaluated when ``f(0, 0) = 0`` and the Jacobian is
    certified nilpotent at every approximant and at the Kleene solution;
    otherwise each entry is ``None``.
    """
    kleene = kleene_fixpoint(sys)
    y = kleene.solution
    if cap is None:
        cap = iteration_cap(sys.degree, sys.dim)
    z = sys.zero_point()
    approx = [z]
    for it in range(1, cap + 1):
        nxt = newton_step(sys, z)
        if tuple_equal(nxt, z):
            break
        z = nxt
        approx.append(z)
    else:
        raise DivergenceError(
            f"Newton iteration did not stabilize within {cap} steps", last=z, iterations=cap
        )
    dists = [tuple_distance(a, y) for a in approx]
    certs = [check_nilpotent(sys, a) for a in approx] + [check_nilpotent(sys, y)]
    applicable = sys.constant_free() and all(c.nilpotent for c in certs)
    if applicable:
        rate = [_rate_ok(p, c) for p, c in zip(dists, dists[1:])]
    else:
        rate = [None] * (len(dists) - 1)
    steps = next(i for i, d in enumerate(dists + [tuple_distance(z, y)]) if d.identical)
    return NewtonReport(
        solution=z,
        approximants=approx,
        distances=dists,
        kleene_baseline_iterations=kleene.iterations,
        rate_check=rate,
        iterations=it,
        steps_to_solution=steps,
        rate_applicable=applicable,
        certificates=certs,
        kleene=kleene,
    )


def check_sandwich(sys, report):
    """List of step indices where ``Y_n <= Z_n <= Y`` or ``Z_n <= f(Z_n) <= Z_(n+1)`` fails."""
    ys = report.kleene.iterates
    y = report.kleene.solution
    bad = []
    zs = report.approximants + [report.solution]
    for n, z in enumerate(report.approximants):
        yn = ys[n] if n < len(ys) else y
        fz = sys.apply(z)
        ok = tuple_leq(yn, z) and tuple_leq(z, y) and tuple_leq(z, fz) and tuple_leq(fz, zs[n + 1])
        if not ok:
            bad.append(n)
    return bad

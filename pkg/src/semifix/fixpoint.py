"""Least fixpoints of polynomial systems, matrix star, trace and repetition.

An :class:`EquationSystem` is a map ``f : A x X -> X`` given by one polynomial
right-hand side per unknown.  Its least solution is a tuple of series in the
parameter variables, computed by Kleene iteration from zero until two
successive iterates agree modulo the truncation degree.

Right-hand sides are stored at a degree ``Dr >= D`` that is large enough to
hold the whole polynomial, so substituting iterates with a non-zero constant
term (Boolean reachability, ``S = 1 + z^2 S``) never loses contributions.
"""

from dataclasses import dataclass, field
from math import ceil

from .differential import tuple_distance
from .errors import ContextError, DivergenceError
from .semiring import INF, get_semiring
from .series import Context, Series, tuple_equal

__all__ = [
    "EquationSystem",
    "SolveReport",
    "kleene_fixpoint",
    "iteration_cap",
    "SemiringMatrix",
    "matrix_star",
    "trace",
    "repetition",
    "fresh_names",
]


def fresh_names(stem, count, taken):
    """``count`` identifiers ``stem0, stem1, ...`` that avoid ``taken``."""
    taken = set(taken)
    while True:
        names = tuple(f"{stem}{i}" for i in range(count))
        if not taken.intersection(names):
            return names
        stem = stem + "_"


def iteration_cap(degree, unknowns):
    return 4 * (degree + 1) * max(1, unknowns)


class EquationSystem:
    """Unknowns ``x_i = rhs_i(params, unknowns)`` solved modulo degree ``D``.

    ``rhs`` series may use any context whose variables are drawn from
    ``params`` and ``unknowns``; they are re-expressed over
    ``params + unknowns`` at the smallest degree among them, which must be at
    least ``degree``.
    """

    def __init__(self, params, unknowns, rhs, degree=None):
        self.params = tuple(params)
        self.unknowns = tuple(unknowns)
        rhs = tuple(rhs)
        if len(rhs) != len(self.unknowns):
            raise ContextError(f"{len(self.unknowns)} unknowns but {len(rhs)} right-hand sides")
        if not rhs:
            raise ContextError("an equation system needs at least one unknown")
        clash = set(self.params) & set(self.unknowns)
        if clash:
            raise ContextError(f"names used both as parameter and unknown: {', '.join(sorted(clash))}")
        sr = rhs[0].semiring
        declared = set(self.params) | set(self.unknowns)
        for q in rhs:
            if q.semiring is not sr:
                raise ContextError("right-hand sides over different semirings")
            stray = [n for n in q.ctx.names if n not in declared]
            if stray:
                raise ContextError(f"undeclared variable {stray[0]!r} in right-hand side")
        rhs_degree = min(q.ctx.degree for q in rhs)
        self.degree = rhs_degree if degree is None else degree
        if rhs_degree < self.degree:
            raise ContextError(
                f"right-hand sides known to degree {rhs_degree}, solution requested to {self.degree}"
            )
        self.semiring = sr
        self.rhs_ctx = Context(sr, self.params + self.unknowns, rhs_degree)
        self.rhs = tuple(q.embed(self.rhs_ctx) for q in rhs)
        self.param_ctx = Context(sr, self.params, self.degree)
        self._param_vars = {p: self.param_ctx.var(p) for p in self.params}
        self.guarded = self._syntactically_guarded() or self._constant_part_converges()

    @classmethod
    def from_text(cls, semiring, params, unknowns, equations, degree):
        """Build from polynomial strings, one per unknown in order."""
        from .parsing import degree_bound, evaluate, parse_expression

        sr = get_semiring(semiring)
        trees = [parse_expression(t) for t in equations]
        dr = max([degree] + [degree_bound(t) for t in trees])
        ctx = Context(sr, tuple(params) + tuple(unknowns), dr)
        return cls(params, unknowns, [evaluate(t, ctx) for t in trees], degree)

    @property
    def dim(self):
        return len(self.unknowns)

    def zero_point(self):
        return tuple(self.param_ctx.zero() for _ in self.unknowns)

    def bindings(self, point):
        b = dict(self._param_vars)
        b.update(zip(self.unknowns, point))
        return b

    def apply(self, point):
        """``f(a, point)``: substitute a tuple of parameter series for the unknowns."""
        point = tuple(point)
        if len(point) != self.dim:
            raise ContextError(f"expected {self.dim} components, got {len(point)}")
        b = self.bindings(point)
        return tuple(q.substitute(b, self.param_ctx) for q in self.rhs)

    def with_degree(self, degree):
        return EquationSystem(self.params, self.unknowns, self.rhs, degree)

    def constant_free(self):
        """True when every right-hand side has zero constant term, i.e. ``f(0, 0) = 0``."""
        return all(q.semiring.is_zero(q.constant_term()) for q in self.rhs)

    def _syntactically_guarded(self):
        np_ = len(self.params)
        for q in self.rhs:
            for e in q.terms:
                if any(e[np_:]) and not any(e[:np_]):
                    return False
        return True

    def _constant_part_converges(self):
        sr = self.semiring
        ctx = Context(sr, (), 0)
        zero_params = {p: ctx.zero() for p in self.params}
        point = tuple(ctx.zero() for _ in self.unknowns)
        for _ in range(self.dim + 1):
            b = dict(zero_params)
            b.update(zip(self.unknowns, point))
            nxt = tuple(q.substitute(b, ctx) for q in self.rhs)
            if tuple_equal(nxt, point):
                return True
            point = nxt
        return False

    def __repr__(self):
        eqs = "; ".join(f"{x} = {q}" for x, q in zip(self.unknowns, self.rhs))
        return f"EquationSystem({eqs}, params={self.params}, D={self.degree}, {self.semiring.name})"


@dataclass
class SolveReport:
    solution: tuple
    iterations: int
    per_iteration_distance: list
    stabilized: bool = True
    iterates: list = field(default_factory=list, repr=False)

    def to_csv(self):
        lines = ["step,distance_exponent,rate_ok"]
        for i, d in enumerate(self.per_iteration_distance):
            lines.append(f"{i},{d},na")
        return "\n".join(lines) + "\n"


def kleene_fixpoint(sys, cap=None):
    """Iterate ``Z -> f(a, Z)`` from zero until stable modulo ``D``.

    ``iterations`` counts right-hand-side applications, including the one that
    confirms stability.  Raises :class:`DivergenceError` at the cap.
    """
    if cap is None:
        cap = iteration_cap(sys.degree, sys.dim)
    z = sys.zero_point()
    iterates = [z]
    for it in range(1, cap + 1):
        nxt = sys.apply(z)
        if tuple_equal(nxt, z):
            dists = [tuple_distance(y, z) for y in iterates]
            return SolveReport(z, it, dists, True, iterates)
        z = nxt
        iterates.append(z)
    raise DivergenceError(
        f"Kleene iteration did not stabilize within {cap} iterations", last=z, iterations=cap
    )


class SemiringMatrix:
    """Square matrix of series sharing one context."""

    __slots__ = ("ctx", "rows")

    def __init__(self, rows, ctx=None):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ContextError("matrix must be square")
        if ctx is None:
            if not n:
                raise ContextError("context required for an empty matrix")
            ctx = rows[0][0].ctx
        for r in rows:
            for q in r:
                if q.ctx != ctx:
                    raise ContextError("matrix entries live in different contexts")
        self.ctx = ctx
        self.rows = rows

    @classmethod
    def identity(cls, ctx, n):
        return cls([[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)], ctx)

    @classmethod
    def zeros(cls, ctx, n):
        return cls([[ctx.zero()] * n for _ in range(n)], ctx)

    @classmethod
    def from_values(cls, semiring, values):
        """A matrix of scalars, as constant series in the empty context."""
        ctx = Context(get_semiring(semiring), (), 0)
        return cls([[ctx.const(v) for v in row] for row in values], ctx)

    @property
    def dim(self):
        return len(self.rows)

    @property
    def semiring(self):
        return self.ctx.semiring

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def values(self):
        """Constant terms as nested lists."""
        return [[q.constant_term() for q in r] for r in self.rows]

    def _same(self, other):
        if not isinstance(other, SemiringMatrix):
            raise TypeError(f"expected a SemiringMatrix, got {type(other).__name__}")
        if other.ctx != self.ctx or other.dim != self.dim:
            raise ContextError("matrix shape or context mismatch")

    def __add__(self, other):
        self._same(other)
        return SemiringMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ctx
        )

    def __mul__(self, other):
        self._same(other)
        return SemiringMatrix(_mat_mul(self.rows, other.rows, self.ctx), self.ctx)

    def apply(self, vec):
        """Matrix-vector product."""
        vec = tuple(vec)
        out = []
        for r in self.rows:
            acc = self.ctx.zero()
            for a, v in zip(r, vec):
                if a.terms and v.terms:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def leq(self, other):
        self._same(other)
        return all(a.leq(b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __eq__(self, other):
        if not isinstance(other, SemiringMatrix):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    __hash__ = None

    def is_zero(self):
        return all(q.is_zero() for r in self.rows for q in r)

    def star(self, split=None):
        return matrix_star(self, split)

    def block(self, rows, cols):
        return [[self.rows[i][j] for j in cols] for i in rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(str(q) for q in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"SemiringMatrix({self})"


def _mat_mul(a, b, ctx):
    cols = list(zip(*b)) if b else []
    out = []
    for r in a:
        row = []
        for c in cols:
            acc = ctx.zero()
            for x, y in zip(r, c):
                if x.terms and y.terms:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _star_blocks(m, ctx, split):
    n = len(m)
    if n == 0:
        return []
    if n == 1:
        return [[m[0][0].star()]]
    k = split(n)
    if not 0 < k < n:
        raise ValueError(f"split {k} out of range for dimension {n}")
    A = [r[:k] for r in m[:k]]
    B = [r[k:] for r in m[:k]]
    C = [r[:k] for r in m[k:]]
    Dm = [r[k:] for r in m[k:]]
    Ds = _star_blocks(Dm, ctx, split)
    BDs = _mat_mul(B, Ds, ctx)
    DsC = _mat_mul(Ds, C, ctx)
    E = _mat_add(A, _mat_mul(BDs, C, ctx))
    Es = _star_blocks(E, ctx, split)
    top_right = _mat_mul(Es, BDs, ctx)
    bottom_left = _mat_mul(DsC, Es, ctx)
    bottom_right = _mat_add(Ds, _mat_mul(bottom_left, BDs, ctx))
    return [l + r for l, r in zip(Es, top_right)] + [l + r for l, r in zip(bottom_left, bottom_right)]


def matrix_star(m, split=None):
    """Least solution of ``S = I + M S`` by recursive 2x2 block elimination.

    With ``M = [[A, B], [C, D]]`` and ``E = A + B D* C`` the star is
    ``[[E*, E* B D*], [D* C E*, D* + D* C E* B D*]]``.  ``split`` is either a
    fixed top-block size or a function of the dimension; the default is
    ``ceil(n / 2)``.
    """
    if split is None:
        fn = lambda n: ceil(n / 2)  # noqa: E731
    elif callable(split):
        fn = split
    else:
        fixed = split
        fn = lambda n: fixed if n == m.dim else ceil(n / 2)  # noqa: E731
    return SemiringMatrix(_star_blocks([list(r) for r in m.rows], m.ctx, fn), m.ctx)


def trace(components, split, unknowns, degree=None):
    """``Tr(f)(a) = f1(a, mu x. f2(a, x))`` for ``f = <f1, f2> : A x X -> B x X``.

    ``components[:split]`` is ``f1`` and ``components[split:]`` is ``f2``;
    ``unknowns`` names the traced block ``X``.  Every other variable is a
    parameter in ``A``.
    """
    components = tuple(components)
    f1, f2 = components[:split], components[split:]
    unknowns = tuple(unknowns)
    names = []
    for q in components:
        for n in q.ctx.names:
            if n not in names:
                names.append(n)
    params = tuple(n for n in names if n not in unknowns)
    sys = EquationSystem(params, unknowns, f2, degree)
    y = kleene_fixpoint(sys).solution
    b = sys.bindings(y)
    out = []
    for q in f1:
        full = q.embed(Context(q.semiring, params + unknowns, q.ctx.degree))
        out.append(full.substitute(b, sys.param_ctx))
    return tuple(out)


def repetition(m):
    """``f* = mu x. (a + f(x))`` for the linear map ``x -> M x``.

    Solves ``x = a + M x`` by Kleene iteration with fresh direction variables
    ``a_j`` and reads entry ``(i, j)`` off as the coefficient of ``a_j`` in
    ``x_i``.  Over the naturals a coefficient still growing at the cap is an
    infinite sum of path weights, so it is widened to infinity and iteration
    resumes with it held there.
    """
    ctx = m.ctx
    n = m.dim
    sr = ctx.semiring
    a_names = fresh_names("rep_a", n, ctx.names)
    x_names = fresh_names("rep_x", n, ctx.names + a_names)
    big = ctx.extend(a_names + x_names, ctx.degree + 1)
    xs = [big.var(x) for x in x_names]
    rhs = []
    for i in range(n):
        q = big.var(a_names[i])
        for j in range(n):
            if m[i, j].terms:
                q = q + m[i, j].embed(big) * xs[j]
        rhs.append(q)
    sys = EquationSystem(ctx.names + a_names, x_names, rhs, ctx.degree + 1)
    solution = _kleene_widening(sys)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coeff = solution[i].coefficient_of(a_names[j])
            row.append(_project(coeff, ctx))
        rows.append(row)
    return SemiringMatrix(rows, ctx)


def _kleene_widening(sys):
    sr = sys.semiring
    cap = iteration_cap(sys.degree, sys.dim)
    if sr.name != "nat":
        return kleene_fixpoint(sys, cap).solution
    floor = None
    z = sys.zero_point()
    rounds = 0
    while True:
        for _ in range(cap):
            nxt = sys.apply(z)
            if floor is not None:
                nxt = tuple(p + f for p, f in zip(nxt, floor))
            if tuple_equal(nxt, z):
                return z
            z = nxt
        rounds += 1
        if rounds > 1 + sum(len(q.terms) for q in z) * 4:
            raise DivergenceError("widening did not converge", last=z, iterations=cap * rounds)
        nxt = sys.apply(z)
        widened = []
        for p, q in zip(z, nxt):
            grow = {e: INF for e, c in q.terms.items() if c != p.terms.get(e, sr.zero)}
            widened.append(Series(sys.param_ctx, grow, _trusted=True))
        floor = tuple(widened) if floor is None else tuple(f + w for f, w in zip(floor, widened))


def _project(s, ctx):
    """Drop variables of ``s`` that are absent from ``ctx`` (keeping terms where they are zero)."""
    pos = [s.ctx.index(n) for n in ctx.names]
    others = [i for i in range(s.ctx.nvars) if i not in pos]
    out = {}
    for e, c in s.terms.items():
        if any(e[i] for i in others):
            continue
        ne = tuple(e[i] for i in pos)
        if sum(ne) <= ctx.degree:
            out[ne] = c
    return Series(ctx, out, _trusted=True)

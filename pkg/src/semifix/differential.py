"""Differential combinator on truncated series.

The derivative of ``p(x_1..x_n)`` is the series ``D[p](x, a) = sum_i dp/dx_i * a_i``
over the doubled context ``(x_1..x_n, a_x_1..a_x_n)``.  Derivatives preserve
total degree (``x^k`` becomes ``k x^(k-1) a``), so they commute with truncation
and are exact modulo ``D``.  Multiplicities ``k`` are realised as the k-fold sum
of coefficients, which is all a semiring offers.
"""

from dataclasses import dataclass
from math import comb

from .errors import ContextError
from .series import Context, Series

__all__ = [
    "direction_names",
    "directional",
    "derivative",
    "partial",
    "Tangent",
    "tangent",
    "nth_derivative",
    "divided_derivative",
    "taylor_monomial",
    "TaylorDistance",
    "taylor_distance",
    "tuple_distance",
    "is_linear",
    "is_linear_in",
    "taylor_shift",
]


def direction_names(names, taken, prefix="a"):
    """Fresh names ``prefix_name`` for a tangent block, avoiding everything in ``taken``.

    If ``a_x`` is already used the prefix is numbered (``a2_x``, ``a3_x``, ...).
    """
    taken = set(taken)
    k = 1
    while True:
        p = prefix if k == 1 else f"{prefix}{k}"
        cand = tuple(f"{p}_{n}" for n in names)
        if not taken.intersection(cand):
            return cand
        k += 1


def directional(p, wrt, directions):
    """``sum_i dp/d(wrt_i) * directions_i`` in ``p``'s context extended by ``directions``."""
    ctx = p.ctx
    sr = ctx.semiring
    idx = [ctx.index(w) for w in wrt]
    out_ctx = ctx.extend(directions)
    n = ctx.nvars
    out = {}
    for e, c in p.terms.items():
        for j, i in enumerate(idx):
            k = e[i]
            if not k:
                continue
            ne = list(e) + [0] * len(directions)
            ne[i] -= 1
            ne[n + j] = 1
            v = sr.scale(k, c)
            if not sr.is_zero(v):
                out[tuple(ne)] = v
    return Series(out_ctx, out, _trusted=True)


def derivative(p, prefix="a"):
    """Total derivative ``D[p]`` over the doubled context."""
    dirs = direction_names(p.ctx.names, p.ctx.names, prefix)
    return directional(p, p.ctx.names, dirs)


def derivative_map(ps, prefix="a"):
    """Componentwise derivative of a tuple of series sharing one context."""
    return tuple(derivative(p, prefix) for p in ps)


def partial(p, i):
    """``dp/dx_i`` in the original context; ``i`` is an index or a variable name."""
    ctx = p.ctx
    if isinstance(i, str):
        i = ctx.index(i)
    if not 0 <= i < ctx.nvars:
        raise IndexError(f"variable index {i} out of range for {ctx.names}")
    sr = ctx.semiring
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if not k:
            continue
        ne = list(e)
        ne[i] -= 1
        v = sr.scale(k, c)
        if not sr.is_zero(v):
            out[tuple(ne)] = v
    return Series(ctx, out, _trusted=True)


@dataclass(frozen=True)
class Tangent:
    """``T(f) = <f . pi_1, D[f]>``: base over ``x``, fiber over ``(x, a)``."""

    base: tuple
    fiber: tuple

    def __post_init__(self):
        for q in self.fiber:
            for e in q.terms:
                if sum(e[len(e) // 2 :]) != 1:
                    raise ContextError("tangent fiber must be homogeneous of degree 1 in the direction block")

    @property
    def ctx(self):
        return self.base[0].ctx

    def compose(self, inner):
        """``T(self) . T(inner)``: the tangent map of ``self . inner``."""
        names = self.ctx.names
        dirs = direction_names(names, names)
        base_bind = dict(zip(names, inner.base))
        base = tuple(q.substitute(base_bind) for q in self.base)
        tctx = inner.fiber[0].ctx if inner.fiber else None
        lifted = tuple(b.embed(tctx) for b in inner.base)
        fib_bind = dict(zip(names, lifted))
        fib_bind.update(zip(dirs, inner.fiber))
        fiber = tuple(q.substitute(fib_bind) for q in self.fiber)
        return Tangent(base, fiber)


def tangent(fs):
    fs = tuple(fs)
    return Tangent(fs, derivative_map(fs))


def nth_derivative(p, n):
    """``f^(n)``: ``n`` successive derivatives in the original variables.

    The result lives over ``(x, b1_x, ..., bn_x)`` and is multilinear in each
    ``bk`` block and symmetric under permuting blocks.
    """
    wrt = p.ctx.names
    cur = p
    for k in range(1, n + 1):
        dirs = direction_names(wrt, cur.ctx.names, prefix=f"b{k}")
        cur = directional(cur, wrt, dirs)
    return cur


def divided_derivative(p, k):
    """``(d^k p / dx^k) / k!`` computed without division.

    For a multi-index ``k`` each monomial ``c x^e`` contributes
    ``c * prod_i C(e_i, k_i) * x^(e - k)``; binomial coefficients are naturals.
    """
    sr = p.semiring
    k = tuple(k)
    out = {}
    for e, c in p.terms.items():
        if any(ei < ki for ei, ki in zip(e, k)):
            continue
        mult = 1
        for ei, ki in zip(e, k):
            mult *= comb(ei, ki)
        ne = tuple(ei - ki for ei, ki in zip(e, k))
        v = sr.scale(mult, c)
        if not sr.is_zero(v):
            out[ne] = sr.plus(out[ne], v) if ne in out else v
    return Series(p.ctx, out, _trusted=True)


def taylor_monomial(p, n):
    return p.degree_slice(n)


@dataclass(frozen=True)
class TaylorDistance:
    """``2^-k`` where ``k`` is the first degree at which two series differ.

    ``exponent is None`` means the series agree up to the truncation degree.
    """

    exponent: object = None

    @property
    def identical(self):
        return self.exponent is None

    @property
    def value(self):
        return 0.0 if self.exponent is None else 2.0 ** (-self.exponent)

    def rank(self):
        """Exponent with "identical" mapped to infinity (larger means closer)."""
        return float("inf") if self.exponent is None else self.exponent

    def __le__(self, other):
        return self.rank() >= other.rank()

    def __lt__(self, other):
        return self.rank() > other.rank()

    def __str__(self):
        return "identical" if self.exponent is None else str(self.exponent)


def _differing_degree(p, q):
    if p.ctx != q.ctx:
        raise ContextError(f"context mismatch: {p.ctx} vs {q.ctx}")
    sr = p.semiring
    zero = sr.zero
    best = None
    for e in p.terms.keys() | q.terms.keys():
        if not sr.eq(p.terms.get(e, zero), q.terms.get(e, zero)):
            d = sum(e)
            if best is None or d < best:
                best = d
    return best


def taylor_distance(p, q):
    return TaylorDistance(_differing_degree(p, q))


def tuple_distance(ps, qs):
    """Distance between tuples: the first degree at which any component differs."""
    best = None
    for p, q in zip(ps, qs):
        d = _differing_degree(p, q)
        if d is not None and (best is None or d < best):
            best = d
    return TaylorDistance(best)


def is_linear(p):
    return all(sum(e) == 1 for e in p.terms)


def is_linear_in(p, names):
    """Every term has degree exactly one in the variables ``names``."""
    idx = [p.ctx.index(n) for n in names]
    return all(sum(e[i] for i in idx) == 1 for e in p.terms)


def taylor_shift(p, a, b, method="taylor"):
    """``p(a + b)`` for tuples ``a``, ``b`` (one series per variable of ``p``).

    ``method="direct"`` substitutes ``a + b``; ``method="taylor"`` sums
    ``divided_derivative(p, k)(a) * b^k`` over all multi-indices ``k``.
    Both must agree exactly modulo the truncation degree.
    """
    names = p.ctx.names
    a, b = tuple(a), tuple(b)
    if len(a) != len(names) or len(b) != len(names):
        raise ContextError("shift tuples must have one component per variable")
    if method == "direct":
        return p.substitute({n: x + y for n, x, y in zip(names, a, b)})
    if method != "taylor":
        raise ValueError(f"unknown method {method!r}")
    ctx = a[0].ctx if a else None
    multi = set()
    for e in p.terms:
        multi.update(_below(e))
    at_a = dict(zip(names, a))
    total = ctx.zero()
    for k in sorted(multi):
        coeff = divided_derivative(p, k).substitute(at_a)
        if coeff.is_zero():
            continue
        mono = ctx.one()
        for bi, ki in zip(b, k):
            if ki:
                mono = mono * bi**ki
        total = total + coeff * mono
    return total


def _below(e):
    if not e:
        yield ()
        return
    for k0 in range(e[0] + 1):
        for rest in _below(e[1:]):
            yield (k0,) + rest

"""Weighted relations ``!A x B -> S`` at finite scale.

A multiset over ``{0, ..., n-1}`` is stored as its count vector, a tuple of
length ``n``.  Relations only record keys whose multiset has at most ``cap``
elements, mirroring series truncation: under the read-off isomorphism the
weight of ``(k, j)`` is the coefficient of ``x^k`` in component ``j``.

Composition, the derivative and the fixpoint are computed here directly on
multisets and share no code with the series module, so the isomorphism is an
independent cross-check rather than a tautology.
"""

from functools import lru_cache
from itertools import product

from .errors import ContextError, DivergenceError
from .semiring import get_semiring
from .series import Context, Series

__all__ = [
    "multisets",
    "decompositions",
    "WeightedRelation",
    "dereliction",
    "cokleisli_compose",
    "pair",
    "rel_derivative",
    "rel_fixpoint",
    "series_of_relation",
    "relation_of_series",
]


@lru_cache(maxsize=None)
def multisets(n, cap):
    """All count vectors over ``n`` elements with total size at most ``cap``, by size."""
    out = [e for e in product(range(cap + 1), repeat=n) if sum(e) <= cap]
    out.sort(key=lambda e: (sum(e), tuple(-k for k in e)))
    return tuple(out)


@lru_cache(maxsize=None)
def _splits(c, parts):
    """Ordered ways to write the natural ``c`` as a sum of ``parts`` naturals."""
    if parts == 0:
        return ((),) if c == 0 else ()
    if parts == 1:
        return ((c,),)
    return tuple((k,) + rest for k in range(c + 1) for rest in _splits(c - k, parts - 1))


@lru_cache(maxsize=None)
def decompositions(m, parts):
    """Ordered decompositions of multiset ``m`` into ``parts`` sub-multisets summing to ``m``."""
    per_coord = [_splits(c, parts) for c in m]
    out = []
    for choice in product(*per_coord):
        out.append(tuple(tuple(choice[i][p] for i in range(len(m))) for p in range(parts)))
    return tuple(out)


def _expand(beta):
    """A fixed enumeration of the multiset ``beta`` as a list of elements."""
    out = []
    for b, k in enumerate(beta):
        out.extend([b] * k)
    return tuple(out)


class WeightedRelation:
    """Finitely supported ``!A x B -> S`` with ``|A| = source_size``, ``|B| = target_size``."""

    __slots__ = ("semiring", "source_size", "target_size", "cap", "weights")

    def __init__(self, semiring, source_size, target_size, cap, weights=None):
        self.semiring = sr = get_semiring(semiring)
        self.source_size = source_size
        self.target_size = target_size
        self.cap = cap
        clean = {}
        for (m, b), w in (weights or {}).items():
            m = tuple(m)
            if len(m) != source_size or any(k < 0 for k in m):
                raise ContextError(f"multiset {m} does not fit a source of size {source_size}")
            if not 0 <= b < target_size:
                raise ContextError(f"target {b} out of range {target_size}")
            if sum(m) > cap:
                continue
            w = sr.check(w)
            if not sr.is_zero(w):
                clean[(m, b)] = w
        self.weights = clean

    def __call__(self, m, b):
        return self.weights.get((tuple(m), b), self.semiring.zero)

    def is_zero(self):
        return not self.weights

    def __eq__(self, other):
        if not isinstance(other, WeightedRelation):
            return NotImplemented
        if self.semiring is not other.semiring or (self.source_size, self.target_size, self.cap) != (
            other.source_size,
            other.target_size,
            other.cap,
        ):
            return False
        sr = self.semiring
        if sr.exact:
            return self.weights == other.weights
        zero = sr.zero
        return all(
            sr.eq(self.weights.get(k, zero), other.weights.get(k, zero))
            for k in self.weights.keys() | other.weights.keys()
        )

    __hash__ = None

    def __add__(self, other):
        sr = self.semiring
        out = dict(self.weights)
        for k, w in other.weights.items():
            out[k] = sr.plus(out[k], w) if k in out else w
        return WeightedRelation(sr, self.source_size, self.target_size, self.cap, out)

    def __repr__(self):
        return (
            f"WeightedRelation({self.source_size}->{self.target_size}, cap={self.cap}, "
            f"{len(self.weights)} weights, {self.semiring.name})"
        )


def dereliction(semiring, n, cap):
    """The identity of the coKleisli category: weight one on ``([a], a)``."""
    sr = get_semiring(semiring)
    w = {}
    for a in range(n):
        e = [0] * n
        e[a] = 1
        w[(tuple(e), a)] = sr.one
    return WeightedRelation(sr, n, n, cap, w)


def cokleisli_compose(r, s):
    """``(S . R)(m, c)``: sum over ``(beta, c)`` in ``S`` and ordered decompositions of ``m``.

    ``beta`` is enumerated as ``b_1, ..., b_k`` and ``m`` is split into ``k``
    parts ``m_1, ..., m_k``; each term is ``S(beta, c) * prod_i R(m_i, b_i)``.
    """
    if r.target_size != s.source_size:
        raise ContextError(f"cannot compose {r.target_size}-target with {s.source_size}-source")
    if r.semiring is not s.semiring:
        raise ContextError("composition across semirings")
    sr = r.semiring
    cap = min(r.cap, s.cap)
    # R grouped by target for the inner products
    by_target = [dict() for _ in range(r.target_size)]
    for (m, b), w in r.weights.items():
        by_target[b][m] = w
    out = {}
    for m in multisets(r.source_size, cap):
        for (beta, c), sw in s.weights.items():
            elems = _expand(beta)
            total = None
            for parts in decompositions(m, len(elems)):
                v = sw
                for part, b in zip(parts, elems):
                    rw = by_target[b].get(part)
                    if rw is None:
                        v = None
                        break
                    v = sr.times(v, rw)
                if v is None or sr.is_zero(v):
                    continue
                total = v if total is None else sr.plus(total, v)
            if total is not None:
                key = (m, c)
                out[key] = sr.plus(out[key], total) if key in out else total
    return WeightedRelation(sr, r.source_size, s.target_size, cap, out)


def pair(relations):
    """``<R_1, ..., R_k>``: targets placed side by side (source shared)."""
    relations = list(relations)
    first = relations[0]
    out = {}
    offset = 0
    for rel in relations:
        if rel.source_size != first.source_size or rel.semiring is not first.semiring:
            raise ContextError("paired relations must share source and semiring")
        for (m, b), w in rel.weights.items():
            out[(m, b + offset)] = w
        offset += rel.target_size
    return WeightedRelation(first.semiring, first.source_size, offset, min(x.cap for x in relations), out)


def rel_derivative(r):
    """``D[R]((m, n), b)`` over the tagged source ``A + A``.

    Nonzero only when ``n = [a]`` is a singleton, where it equals
    ``(m_a + 1) * R(m + [a], b)``: the number of ways to single out one copy of
    ``a`` in ``m + [a]`` times the weight.
    """
    sr = r.semiring
    n = r.source_size
    out = {}
    for (m, b), w in r.weights.items():
        for a in range(n):
            k = m[a]
            if not k:
                continue
            base = list(m)
            base[a] -= 1
            tag = [0] * n
            tag[a] = 1
            v = sr.scale(k, w)
            if not sr.is_zero(v):
                out[(tuple(base) + tuple(tag), b)] = v
    return WeightedRelation(sr, 2 * n, r.target_size, r.cap, out)


def rel_fixpoint(r, params, cap_iterations=None):
    """Least ``F : !A x X -> S`` with ``F(m) = R(m, F(m))``.

    ``r`` has source ``A + X`` (the first ``params`` elements are ``A``) and
    target ``X``.  Iterates ``F_(n+1) = R . <dereliction, F_n>`` from zero.
    """
    sr = r.semiring
    nx = r.target_size
    if r.source_size != params + nx:
        raise ContextError("fixpoint source must be parameters followed by the target")
    cap = r.cap
    if cap_iterations is None:
        cap_iterations = 4 * (cap + 1) * max(1, nx)
    # injections of A into A + X: weight one on ([a], a)
    inj = {}
    for a in range(params):
        e = [0] * params
        e[a] = 1
        inj[(tuple(e), a)] = sr.one
    f = WeightedRelation(sr, params, nx, cap)
    for _ in range(cap_iterations):
        tupled = dict(inj)
        for (m, x), w in f.weights.items():
            tupled[(m, params + x)] = w
        nxt = cokleisli_compose(WeightedRelation(sr, params, params + nx, cap, tupled), r)
        if nxt == f:
            return f
        f = nxt
    raise DivergenceError("relational fixpoint did not stabilize", last=f, iterations=cap_iterations)


def series_of_relation(r, names=None):
    """Components ``p_j = sum_k R(k, j) x^k`` in a context of the source size at degree ``cap``."""
    if names is None:
        names = tuple(f"x{i}" for i in range(r.source_size))
    if len(names) != r.source_size:
        raise ContextError("one variable name per source element required")
    ctx = Context(r.semiring, tuple(names), r.cap)
    comps = [dict() for _ in range(r.target_size)]
    for (m, b), w in r.weights.items():
        comps[b][m] = w
    return tuple(Series(ctx, c) for c in comps)


def relation_of_series(ps):
    """Inverse read-off: a relation with ``cap`` equal to the series degree."""
    ps = tuple(ps)
    if not ps:
        raise ContextError("at least one component required")
    ctx = ps[0].ctx
    for p in ps:
        if p.ctx != ctx:
            raise ContextError("components must share a context")
    w = {}
    for j, p in enumerate(ps):
        for e, c in p.terms.items():
            w[(e, j)] = c
    return WeightedRelation(ctx.semiring, ctx.nvars, len(ps), ctx.degree, w)

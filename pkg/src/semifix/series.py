"""Truncated multivariate power series over a semiring.

A :class:`Context` fixes the coefficient semiring, an ordered list of variable
names and a truncation degree ``D``.  A :class:`Series` is a sparse map from
exponent tuples (one entry per context variable, total degree at most ``D``) to
non-zero coefficients.  All binary operations require both operands to live in
the same context, so precision is never lost silently.

>>> from semifix.semiring import NAT
>>> ctx = Context(NAT, ("z",), 3)
>>> z = ctx.var("z")
>>> str((ctx.one() + z) ** 2)
'1 + 2*z + z^2'
>>> str(z.star())
'1 + z + z^2 + z^3'
"""

from dataclasses import dataclass
from operator import add as _iadd

from .errors import ContextError
from .semiring import Semiring, get_semiring

__all__ = ["Context", "Series", "degree_of", "tuple_leq", "tuple_equal"]


def degree_of(e):
    return sum(e)


@dataclass(frozen=True)
class Context:
    semiring: Semiring
    names: tuple
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "semiring", get_semiring(self.semiring))
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ContextError(f"duplicate variable names in {self.names}")
        if self.degree < 0:
            raise ContextError("truncation degree must be non-negative")

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextError(f"variable {name!r} is not in context {self.names}") from None

    def zero(self):
        return Series(self, {}, _trusted=True)

    def one(self):
        return self.const(self.semiring.one)

    def const(self, value):
        value = self.semiring.check(value)
        if self.semiring.is_zero(value):
            return self.zero()
        return Series(self, {(0,) * self.nvars: value}, _trusted=True)

    def var(self, name):
        i = self.index(name)
        if self.degree < 1:
            return self.zero()
        e = [0] * self.nvars
        e[i] = 1
        return Series(self, {tuple(e): self.semiring.one}, _trusted=True)

    def monomial(self, exponents, coefficient=None):
        sr = self.semiring
        c = sr.one if coefficient is None else coefficient
        return Series(self, {tuple(exponents): c})

    def extend(self, names, degree=None):
        return Context(self.semiring, self.names + tuple(names), self.degree if degree is None else degree)

    def with_degree(self, degree):
        return Context(self.semiring, self.names, degree)

    def parse(self, text):
        from .parsing import evaluate, parse_expression

        return evaluate(parse_expression(text), self)


class Series:
    """An immutable truncated power series.

    ``terms`` maps exponent tuples to coefficients; zero coefficients and
    exponents above the truncation degree are dropped on construction.
    """

    __slots__ = ("ctx", "terms", "_graded")

    def __init__(self, ctx, terms=None, *, _trusted=False):
        self.ctx = ctx
        self._graded = None
        if _trusted:
            self.terms = terms
            return
        sr = ctx.semiring
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != ctx.nvars or any(k < 0 for k in e):
                raise ContextError(f"exponent {e} does not fit context {ctx.names}")
            if sum(e) > ctx.degree:
                continue
            c = sr.check(c)
            if not sr.is_zero(c):
                clean[e] = sr.plus(clean[e], c) if e in clean else c
        self.terms = clean

    # -- basic queries --------------------------------------------------------

    @property
    def semiring(self):
        return self.ctx.semiring

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, e):
        e = tuple(e)
        if len(e) != self.ctx.nvars:
            raise ContextError(f"exponent {e} has wrong arity for context {self.ctx.names}")
        return self.terms.get(e, self.semiring.zero)

    def constant_term(self):
        return self.terms.get((0,) * self.ctx.nvars, self.semiring.zero)

    def max_degree(self):
        """Highest total degree present, or -1 for the zero series."""
        return max((sum(e) for e in self.terms), default=-1)

    def graded(self):
        """Terms as ``(degree, exponent, coefficient)`` sorted by degree."""
        if self._graded is None:
            self._graded = sorted(((sum(e), e, c) for e, c in self.terms.items()), key=lambda t: t[0])
        return self._graded

    def sorted_terms(self):
        """Terms in graded-lexicographic order: by total degree, then lex descending."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), tuple(-k for k in ec[0])))

    # -- arithmetic -------------------------------------------------------------

    def _check_same(self, other):
        if not isinstance(other, Series):
            raise TypeError(f"expected a Series, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check_same(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        sr = self.semiring
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                v = sr.plus(out[e], c)
                if sr.is_zero(v):
                    del out[e]
                else:
                    out[e] = v
            else:
                out[e] = c
        return Series(self.ctx, out, _trusted=True)

    def __mul__(self, other):
        self._check_same(other)
        if not self.terms or not other.terms:
            return self.ctx.zero()
        sr = self.semiring
        plus, times, is_zero = sr.plus, sr.times, sr.is_zero
        D = self.ctx.degree
        out = {}
        right = other.graded()
        for da, ea, ca in self.graded():
            room = D - da
            for db, eb, cb in right:
                if db > room:
                    break
                e = tuple(map(_iadd, ea, eb))
                v = times(ca, cb)
                if e in out:
                    out[e] = plus(out[e], v)
                else:
                    out[e] = v
        return Series(self.ctx, {e: c for e, c in out.items() if not is_zero(c)}, _trusted=True)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, value):
        """Multiply every coefficient by the scalar ``value``."""
        sr = self.semiring
        value = sr.check(value)
        out = {}
        for e, c in self.terms.items():
            v = sr.times(value, c)
            if not sr.is_zero(v):
                out[e] = v
        return Series(self.ctx, out, _trusted=True)

    def map_coefficients(self, fn):
        sr = self.semiring
        out = {}
        for e, c in self.terms.items():
            v = fn(e, c)
            if not sr.is_zero(v):
                out[e] = v
        return Series(self.ctx, out, _trusted=True)

    def truncate(self, d):
        if d > self.ctx.degree:
            raise ContextError(f"cannot raise truncation degree from {self.ctx.degree} to {d}")
        ctx = self.ctx.with_degree(d)
        return Series(ctx, {e: c for e, c in self.terms.items() if sum(e) <= d}, _trusted=True)

    def degree_slice(self, n):
        """The homogeneous part of total degree ``n``."""
        return Series(self.ctx, {e: c for e, c in self.terms.items() if sum(e) == n}, _trusted=True)

    def star(self):
        """Least solution of ``s = 1 + p*s`` modulo the truncation degree.

        Computed as ``c* . t*`` where ``c`` is the constant term and
        ``t = c* . (p - c)``; ``t`` has no constant term so ``t*`` is the
        finite geometric sum ``1 + t + ... + t^D``.
        """
        sr = self.semiring
        ctx = self.ctx
        zero_e = (0,) * ctx.nvars
        c = self.terms.get(zero_e, sr.zero)
        cs = sr.closure(c)
        rest = {e: v for e, v in self.terms.items() if e != zero_e}
        t = Series(ctx, rest, _trusted=True).scale(cs)
        # prod_{j} (1 + t^(2^j)) enumerates every power t^k with k < 2^J exactly once
        result = ctx.one()
        power = t
        reach = 1
        while reach <= ctx.degree and not power.is_zero():
            result = result * (ctx.one() + power)
            power = power * power
            reach *= 2
        return result.scale(cs)

    # -- order and truncated subtraction ------------------------------------------

    def leq(self, other):
        """Coefficientwise natural order."""
        self._check_same(other)
        sr = self.semiring
        zero = sr.zero
        for e in self.terms.keys() | other.terms.keys():
            if not sr.le(self.terms.get(e, zero), other.terms.get(e, zero)):
                return False
        return True

    def monus(self, other):
        """Coefficientwise truncated subtraction ``self - other``."""
        self._check_same(other)
        sr = self.semiring
        zero = sr.zero
        out = {}
        for e, c in self.terms.items():
            v = sr.minus(c, other.terms.get(e, zero))
            if not sr.is_zero(v):
                out[e] = v
        return Series(self.ctx, out, _trusted=True)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if other.ctx != self.ctx:
            return False
        sr = self.semiring
        if sr.exact:
            return self.terms == other.terms
        zero = sr.zero
        return all(
            sr.eq(self.terms.get(e, zero), other.terms.get(e, zero))
            for e in self.terms.keys() | other.terms.keys()
        )

    __hash__ = None

    # -- composition --------------------------------------------------------------

    def substitute(self, bindings, ctx=None):
        """Simultaneously replace every variable by a series, truncating at the target degree.

        ``bindings`` maps each variable name of this series to a series in one
        shared target context; ``ctx`` names that target explicitly, which is
        needed when there are no variables to bind.
        """
        names = self.ctx.names
        missing = [n for n in names if n not in bindings]
        if missing:
            raise ContextError(f"missing binding for {', '.join(missing)}")
        extra = [n for n in bindings if n not in names]
        if extra:
            raise ContextError(f"binding for unknown variable {', '.join(map(str, extra))}")
        targets = [bindings[n] for n in names]
        if ctx is None:
            if not targets:
                raise ContextError("target context required when substituting into a constant")
            ctx = targets[0].ctx
        for t in targets:
            if t.ctx != ctx:
                raise ContextError(f"bound series live in different contexts: {t.ctx} vs {ctx}")
        if ctx.semiring is not self.semiring:
            raise ContextError("substitution across semirings")
        if self.ctx.degree < ctx.degree:
            raise ContextError(
                f"degree mismatch: series known to degree {self.ctx.degree}, target needs {ctx.degree}"
            )
        sr = self.semiring
        powers = [[ctx.one(), t] for t in targets]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * targets[i])
            return cache[k]

        acc = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    f = power(i, k)
                    term = f if term is None else term * f
                    if term.is_zero():
                        break
            if term is None:
                term = ctx.one()
            for te, tc in term.terms.items():
                v = sr.times(c, tc)
                acc[te] = sr.plus(acc[te], v) if te in acc else v
        return Series(ctx, {e: v for e, v in acc.items() if not sr.is_zero(v)}, _trusted=True)

    def embed(self, ctx):
        """Re-express this series in a context whose variables include ours.

        Raising the degree is permitted; the caller vouches that the missing
        higher-degree terms are zero or cannot contribute.
        """
        if ctx.semiring is not self.semiring:
            raise ContextError("embedding across semirings")
        if ctx == self.ctx:
            return self
        pos = [ctx.index(n) for n in self.ctx.names]
        n = ctx.nvars
        D = ctx.degree
        out = {}
        for e, c in self.terms.items():
            if sum(e) > D:
                continue
            ne = [0] * n
            for i, k in zip(pos, e):
                ne[i] = k
            out[tuple(ne)] = c
        return Series(ctx, out, _trusted=True)

    def coefficient_of(self, name, power=1):
        """Coefficient series of ``name**power``: terms with exactly that power, variable removed.

        The result lives in the context without ``name`` at degree ``D - power``,
        the degree up to which it is fully determined.
        """
        i = self.ctx.index(name)
        names = self.ctx.names[:i] + self.ctx.names[i + 1 :]
        ctx = Context(self.semiring, names, max(self.ctx.degree - power, 0))
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + e[i + 1 :]] = c
        return Series(ctx, out, _trusted=True)

    def evaluate(self, point):
        """Evaluate at scalar values ``{name: value}`` (every variable required)."""
        sr = self.semiring
        vals = [sr.check(point[n]) for n in self.ctx.names]
        total = sr.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(vals, e):
                for _ in range(k):
                    v = sr.times(v, x)
            total = sr.plus(total, v)
        return total

    # -- text form --------------------------------------------------------------------

    def __str__(self):
        sr = self.semiring
        if not self.terms:
            return sr.format(sr.zero)
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ctx.names, e) if k
            )
            if not mono:
                parts.append(sr.format(c))
            elif c == sr.one:
                parts.append(mono)
            else:
                parts.append(f"{sr.format(c)}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Series({str(self)!r}, vars={self.ctx.names}, D={self.ctx.degree}, {self.semiring.name})"


def tuple_equal(ps, qs):
    return len(ps) == len(qs) and all(p == q for p, q in zip(ps, qs))


def tuple_leq(ps, qs):
    return len(ps) == len(qs) and all(p.leq(q) for p, q in zip(ps, qs))

"""Omega-continuous semirings with natural order and truncated subtraction.

Values are plain Python scalars (``bool``, ``int``, ``float`` and ``math.inf``);
each semiring object knows how to combine, compare and render them.  The public
operations (:meth:`Semiring.add`, :meth:`Semiring.mul`, ...) validate their
operands and raise :class:`~semifix.errors.DomainError` for values outside the
carrier.  The unchecked variants (``plus``, ``times``, ``le``, ``minus``,
``closure``) are used on hot paths where operands are already known to be valid.

Five instances are provided and can be looked up by name with
:func:`get_semiring`:

=========  =====================  =====  =====  ===========
name       carrier                zero   one    natural order
=========  =====================  =====  =====  ===========
bool       {False, True}          False  True   False <= True
nat        {0, ..., 2**64-1, inf} 0      1      numeric
real       [0, inf]               0.0    1.0    numeric (tolerance 1e-9)
tropical   {0, 1, 2, ..., inf}    inf    0      reverse numeric
viterbi    [0, 1]                 0.0    1.0    numeric (tolerance 1e-9)
=========  =====================  =====  =====  ===========

Truncated subtraction ``monus(a, b)`` is the least ``h`` with ``a <= b + h``.
On the idempotent instances (bool, tropical, viterbi) this is residuation, not
numeric subtraction: ``monus(a, b)`` is zero when ``a <= b`` and ``a`` otherwise.
"""

import math
import numbers

from .errors import DomainError

INF = math.inf
NAT_MAX = 2**64 - 1

__all__ = [
    "INF",
    "NAT_MAX",
    "Semiring",
    "BOOL",
    "NAT",
    "REAL",
    "TROPICAL",
    "VITERBI",
    "SEMIRINGS",
    "get_semiring",
]


class Semiring:
    name = "abstract"
    zero = None
    one = None
    idempotent = False
    exact = True
    tolerance = 0.0
    # Sample coefficients used by random generators (carrier literals 0, 1, 2 and one).
    samples = ()

    # -- carrier membership -------------------------------------------------

    def check(self, a):
        raise NotImplementedError

    def contains(self, a):
        try:
            self.check(a)
        except DomainError:
            return False
        return True

    # -- unchecked operations -------------------------------------------------

    def plus(self, a, b):
        raise NotImplementedError

    def times(self, a, b):
        raise NotImplementedError

    def le(self, a, b):
        raise NotImplementedError

    def minus(self, a, b):
        raise NotImplementedError

    def closure(self, a):
        raise NotImplementedError

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return self.eq(a, self.zero)

    # -- checked public operations -----------------------------------------

    def add(self, a, b):
        return self.plus(self.check(a), self.check(b))

    def mul(self, a, b):
        return self.times(self.check(a), self.check(b))

    def leq(self, a, b):
        return self.le(self.check(a), self.check(b))

    def monus(self, a, b):
        return self.minus(self.check(a), self.check(b))

    def star(self, a):
        return self.closure(self.check(a))

    def star_iterative(self, a, steps=64):
        """Partial sums ``s_{k+1} = 1 + a*s_k`` of the geometric series (reference only)."""
        a = self.check(a)
        s = self.zero
        for _ in range(steps):
            s = self.plus(self.one, self.times(a, s))
        return s

    # -- helpers ------------------------------------------------------------

    def from_int(self, n):
        """The n-fold sum ``one + ... + one``."""
        raise NotImplementedError

    def scale(self, n, a):
        """The n-fold sum ``a + ... + a``."""
        return self.times(self.from_int(n), a)

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.plus(total, v)
        return total

    def product(self, values):
        total = self.one
        for v in values:
            total = self.times(total, v)
        return total

    def literal(self, text):
        """Parse a carrier literal such as ``"3"``, ``"0.5"`` or ``"inf"``."""
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def random_value(self, rng):
        return rng.choice(self.samples)

    def __repr__(self):
        return f"<semiring {self.name}>"


def _is_int(a):
    return isinstance(a, numbers.Integral) and not isinstance(a, bool)


def _is_real(a):
    return isinstance(a, numbers.Real) and not isinstance(a, bool) and not math.isnan(a)


class BooleanSemiring(Semiring):
    name = "bool"
    zero = False
    one = True
    idempotent = True
    samples = (True,)

    def check(self, a):
        if not isinstance(a, bool):
            raise DomainError(f"{a!r} is not a Boolean value")
        return a

    def plus(self, a, b):
        return a or b

    def times(self, a, b):
        return a and b

    def le(self, a, b):
        return b or not a

    def minus(self, a, b):
        return a and not b

    def closure(self, a):
        return True

    def from_int(self, n):
        return n > 0

    def scale(self, n, a):
        return a and n > 0

    def literal(self, text):
        t = text.strip().lower()
        if t in ("1", "t", "true"):
            return True
        if t in ("0", "f", "false"):
            return False
        raise DomainError(f"{text!r} is not a Boolean literal")

    def format(self, a):
        return "1" if a else "0"


class NaturalSemiring(Semiring):
    """Saturating 64-bit naturals with a distinguished infinity."""

    name = "nat"
    zero = 0
    one = 1
    samples = (1, 2)

    def check(self, a):
        if a == INF and not isinstance(a, bool):
            return INF
        if not _is_int(a) or a < 0 or a > NAT_MAX:
            raise DomainError(f"{a!r} is not in the saturating naturals")
        return int(a)

    def plus(self, a, b):
        s = a + b
        return INF if s > NAT_MAX else s

    def times(self, a, b):
        if a == 0 or b == 0:
            return 0
        p = a * b
        return INF if p > NAT_MAX else p

    def le(self, a, b):
        return a <= b

    def minus(self, a, b):
        if a == INF:
            return 0 if b == INF else INF
        if b >= a:
            return 0
        return a - b

    def closure(self, a):
        return 1 if a == 0 else INF

    def from_int(self, n):
        return INF if n > NAT_MAX else n

    def literal(self, text):
        t = text.strip().lower()
        if t == "inf":
            return INF
        try:
            v = int(t)
        except ValueError:
            raise DomainError(f"{text!r} is not a natural-number literal") from None
        return self.check(v)

    def format(self, a):
        return "inf" if a == INF else str(a)


class RealSemiring(Semiring):
    """Non-negative extended reals; comparisons use an absolute tolerance."""

    name = "real"
    zero = 0.0
    one = 1.0
    exact = False
    tolerance = 1e-9
    samples = (1.0, 2.0, 0.5)

    def check(self, a):
        if not _is_real(a) or a < 0:
            raise DomainError(f"{a!r} is not a non-negative extended real")
        return float(a)

    def plus(self, a, b):
        return a + b

    def times(self, a, b):
        if a == 0 or b == 0:
            return 0.0
        return a * b

    def le(self, a, b):
        return a <= b + self.tolerance

    def eq(self, a, b):
        return a == b or abs(a - b) <= self.tolerance

    def minus(self, a, b):
        if a == INF:
            return 0.0 if b == INF else INF
        if b >= a:
            return 0.0
        return a - b

    def closure(self, a):
        if a < 1.0:
            return 1.0 / (1.0 - a)
        return INF

    def from_int(self, n):
        return float(n)

    def literal(self, text):
        try:
            v = float(text)
        except ValueError:
            raise DomainError(f"{text!r} is not a real literal") from None
        return self.check(v)

    def format(self, a):
        return repr(float(a))


class TropicalSemiring(Semiring):
    """Min-plus over non-negative integer weights; zero is +inf, one is 0."""

    name = "tropical"
    zero = INF
    one = 0
    idempotent = True
    samples = (0, 1, 2)

    def check(self, a):
        if a == INF and not isinstance(a, bool):
            return INF
        if not _is_int(a) or a < 0:
            raise DomainError(f"{a!r} is not a non-negative tropical weight")
        return int(a)

    def plus(self, a, b):
        return a if a <= b else b

    def times(self, a, b):
        return a + b

    def le(self, a, b):
        return b <= a

    def minus(self, a, b):
        return INF if b <= a else a

    def closure(self, a):
        return 0

    def from_int(self, n):
        return 0 if n > 0 else INF

    def scale(self, n, a):
        return a if n > 0 else INF

    def literal(self, text):
        t = text.strip().lower()
        if t == "inf":
            return INF
        try:
            v = int(t)
        except ValueError:
            raise DomainError(f"{text!r} is not a tropical weight literal") from None
        return self.check(v)

    def format(self, a):
        return "inf" if a == INF else str(a)


class ViterbiSemiring(Semiring):
    """Max-times over the unit interval."""

    name = "viterbi"
    zero = 0.0
    one = 1.0
    idempotent = True
    exact = False
    tolerance = 1e-9
    samples = (1.0, 0.5, 0.25)

    def check(self, a):
        if not _is_real(a) or not 0 <= a <= 1:
            raise DomainError(f"{a!r} is not in the unit interval")
        return float(a)

    def plus(self, a, b):
        return a if a >= b else b

    def times(self, a, b):
        return a * b

    def le(self, a, b):
        return a <= b + self.tolerance

    def eq(self, a, b):
        return abs(a - b) <= self.tolerance

    def minus(self, a, b):
        return 0.0 if b + self.tolerance >= a else a

    def closure(self, a):
        return 1.0

    def from_int(self, n):
        return 1.0 if n > 0 else 0.0

    def scale(self, n, a):
        return a if n > 0 else 0.0

    def literal(self, text):
        try:
            v = float(text)
        except ValueError:
            raise DomainError(f"{text!r} is not a probability literal") from None
        return self.check(v)

    def format(self, a):
        return repr(float(a))


BOOL = BooleanSemiring()
NAT = NaturalSemiring()
REAL = RealSemiring()
TROPICAL = TropicalSemiring()
VITERBI = ViterbiSemiring()

SEMIRINGS = {s.name: s for s in (BOOL, NAT, REAL, TROPICAL, VITERBI)}


def get_semiring(name):
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name]
    except KeyError:
        known = ", ".join(SEMIRINGS)
        raise ValueError(f"unknown semiring {name!r}; expected one of {known}") from None

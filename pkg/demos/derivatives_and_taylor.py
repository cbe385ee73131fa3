"""Derivatives of truncated series in any semiring.

The derivative D[p] adds one direction variable a_x per variable x and is
linear in those.  Taylor expansion needs no division: the k-th divided
derivative has binomial coefficients, so p(a + b) can be rebuilt from it
even over the Booleans or min-plus.
"""

from semifix import Context
from semifix.differential import derivative, nth_derivative, taylor_distance, taylor_shift

ctx = Context("nat", ("x", "y"), 6)
p = ctx.parse("x^3 + 2*x*y + y^2")
print("p        =", p)
print("D[p]     =", derivative(p))
print("p''      =", nth_derivative(p, 2))

# the same shift two ways, over three carriers
for sr in ("nat", "bool", "tropical"):
    src = Context(sr, ("x", "y"), 6)
    tgt = Context(sr, ("u", "v"), 6)
    q = src.parse("x^3 + x*y + y^2")
    a = [tgt.parse("u"), tgt.parse("1 + v")]
    b = [tgt.parse("v^2"), tgt.parse("u")]
    direct = taylor_shift(q, a, b, "direct")
    taylor = taylor_shift(q, a, b, "taylor")
    print(f"{sr:>8}: p(a + b) agrees both ways: {direct == taylor}")

# distance 2^-k where k is the first degree at which two series differ
z = Context("nat", ("z",), 8)
f = z.parse("z + z^3 + 2*z^5")
g = z.parse("z + z^3 + 3*z^5 + z^6")
print("d(f, g) = 2^-%s" % taylor_distance(f, g))

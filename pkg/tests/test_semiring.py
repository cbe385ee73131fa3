import math
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from semifix.errors import DomainError
from semifix.semiring import BOOL, INF, NAT, NAT_MAX, REAL, SEMIRINGS, TROPICAL, VITERBI, get_semiring

nat_values = st.one_of(st.integers(0, 50), st.just(INF), st.integers(NAT_MAX - 5, NAT_MAX))
tropical_values = st.one_of(st.integers(0, 50), st.just(INF))
real_values = st.one_of(st.just(0.0), st.floats(1e-6, 100), st.just(INF))
viterbi_values = st.one_of(st.just(0.0), st.floats(1e-6, 1))

CARRIERS = {
    "bool": (BOOL, st.booleans()),
    "nat": (NAT, nat_values),
    "tropical": (TROPICAL, tropical_values),
    "real": (REAL, real_values),
    "viterbi": (VITERBI, viterbi_values),
}


def test_worked_examples():
    assert NAT.add(2, 3) == 5
    assert NAT.add(INF, 1) == INF
    assert TROPICAL.add(3, 5) == 3
    assert BOOL.mul(True, False) is False
    assert TROPICAL.mul(3, 5) == 8
    assert REAL.mul(0.0, INF) == 0.0
    assert NAT.leq(2, 5)
    assert TROPICAL.leq(5, 3)
    assert not BOOL.leq(True, False)
    assert NAT.monus(5, 3) == 2
    assert NAT.monus(3, 5) == 0
    assert BOOL.monus(True, True) is False
    assert NAT.star(0) == 1
    assert NAT.star(2) == INF
    assert REAL.star(0.5) == pytest.approx(2.0)


def test_infinity_minus_infinity_is_zero():
    assert NAT.monus(INF, INF) == 0
    assert REAL.monus(INF, INF) == 0.0


def test_tropical_monus_is_residuation():
    # zero (inf) when b <= a numerically, otherwise a
    assert TROPICAL.monus(5, 3) == INF
    assert TROPICAL.monus(3, 5) == 3
    assert TROPICAL.monus(4, 4) == INF
    assert TROPICAL.monus(INF, 2) == INF
    assert TROPICAL.monus(2, INF) == 2


def test_mixed_or_foreign_values_rejected():
    with pytest.raises(DomainError):
        NAT.add(1, True)
    with pytest.raises(DomainError):
        NAT.add(-1, 2)
    with pytest.raises(DomainError):
        VITERBI.mul(2.0, 0.5)
    with pytest.raises(DomainError):
        BOOL.add(1, 0)
    with pytest.raises(DomainError):
        TROPICAL.add(1.5, 2)


def test_lookup_by_name():
    for name, sr in SEMIRINGS.items():
        assert get_semiring(name) is sr
        assert get_semiring(sr) is sr
    with pytest.raises(ValueError, match="unknown semiring"):
        get_semiring("complex")


def test_exactness_flags():
    assert BOOL.exact and NAT.exact and TROPICAL.exact
    assert not REAL.exact and not VITERBI.exact


@pytest.mark.parametrize("name", sorted(CARRIERS))
def test_literal_format_round_trip(name):
    sr, _ = CARRIERS[name]
    for v in (sr.zero, sr.one) + tuple(sr.samples):
        assert sr.eq(sr.literal(sr.format(v)), v)


def test_nat_saturates_never_wraps():
    assert NAT.add(NAT_MAX, 1) == INF
    assert NAT.mul(NAT_MAX, 2) == INF
    assert NAT.mul(INF, 0) == 0
    assert NAT.from_int(NAT_MAX + 10) == INF


@given(st.integers(0, 2**70), st.integers(0, 2**70))
def test_nat_fuzzed_saturation(a, b):
    a, b = NAT.from_int(a), NAT.from_int(b)
    for v in (NAT.add(a, b), NAT.mul(a, b), NAT.monus(a, b)):
        assert v == INF or (isinstance(v, int) and 0 <= v <= NAT_MAX)


def _semiring_axioms(sr, a, b, c):
    eq = sr.eq
    add, mul = sr.add, sr.mul
    assert eq(add(a, b), add(b, a))
    assert eq(add(add(a, b), c), add(a, add(b, c)))
    assert eq(add(a, sr.zero), a)
    assert eq(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert eq(mul(a, sr.one), a)
    assert eq(mul(a, sr.zero), sr.zero)
    assert eq(mul(a, b), mul(b, a))
    if sr.exact:
        assert eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
    # order: zero is bottom, + and * monotone
    assert sr.leq(sr.zero, a)
    assert sr.leq(a, add(a, b))
    if sr.leq(a, b) and (sr.exact or a <= b):
        assert sr.leq(add(a, c), add(b, c))
        assert sr.leq(mul(a, c), mul(b, c))


def _saturates(sr, *vals):
    """True when a finite nat sum or product of the operands overflowed to inf."""
    if sr is not NAT or INF in vals:
        return False
    return sum(vals) > NAT_MAX


def _monus_laws(sr, a, b, c):
    # leq(a - b, h) iff leq(a, b + h)
    assert sr.leq(sr.monus(a, b), c) == sr.leq(a, sr.add(b, c))
    assert sr.leq(a, sr.add(sr.monus(a, b), b))


@pytest.mark.parametrize("name", ["nat", "tropical", "real", "viterbi"])
def test_semiring_axioms_random(name):
    sr, values = CARRIERS[name]

    @settings(max_examples=300, deadline=None)
    @given(values, values, values)
    def check(a, b, c):
        _semiring_axioms(sr, a, b, c)
        if sr.exact:
            assume(not _saturates(sr, b, c) and not _saturates(sr, a, b))
            _monus_laws(sr, a, b, c)

    check()


def test_boolean_axioms_exhaustive():
    for a, b, c in product((False, True), repeat=3):
        _semiring_axioms(BOOL, a, b, c)
        assert BOOL.mul(a, BOOL.add(b, c)) == BOOL.add(BOOL.mul(a, b), BOOL.mul(a, c))
        _monus_laws(BOOL, a, b, c)


def test_boolean_monus_is_least_witness():
    # brute force: the least h with b + h >= a
    for a, b in product((False, True), repeat=2):
        witnesses = [h for h in (False, True) if BOOL.leq(a, BOOL.add(b, h))]
        assert BOOL.monus(a, b) == min(witnesses)


@pytest.mark.parametrize("name", sorted(CARRIERS))
def test_star_unfolds(name):
    sr, values = CARRIERS[name]

    @settings(max_examples=200, deadline=None)
    @given(values)
    def check(a):
        s = sr.star(a)
        assert sr.eq(s, sr.add(sr.one, sr.mul(a, s)))

    check()


@pytest.mark.parametrize("a", [0.0, 0.1, 0.5, 0.9])
def test_real_star_matches_iteration(a):
    s = 0.0
    for _ in range(2000):
        s = 1.0 + a * s
    assert math.isclose(REAL.star(a), s, rel_tol=1e-9)


def test_nat_star_growth_detected_by_iteration():
    s = 0
    for _ in range(65):
        s = NAT.add(1, NAT.mul(2, s))
    assert s == INF
    assert NAT.star(2) == INF
    assert NAT.star(1) == INF


def test_tropical_star_is_one():
    for a in (0, 1, 7, INF):
        assert TROPICAL.star(a) == 0


def test_nat_saturation_boundary():
    # the 64-bit surrogate identifies NAT_MAX + 1 with inf, so the adjunction
    # only holds where no finite operation saturates
    assert NAT.add(1, NAT_MAX) == INF
    assert NAT.monus(INF, 1) == INF
    assert not NAT.leq(NAT.monus(INF, 1), NAT_MAX)
    assert NAT.leq(INF, NAT.add(1, NAT_MAX))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nichols_a2.scalars import (
    InvalidSpec,
    NotDivisor,
    ZeroElement,
    cyclotomic_polynomial,
    make_field,
)


def test_cyclotomic_polynomial_known_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)


@pytest.mark.parametrize("spec,L", [
    ("cyclotomic:9", 9),
    ("cyclotomic:4", 4),
    ("fp:19:9", 9),
    ("fp:31:15", 15),
])
def test_zeta_has_exact_order(spec, L):
    F = make_field(spec)
    assert F.L == L
    z = F.zeta
    assert z**L == F.one
    for d in range(1, L):
        assert z**d != F.one


@pytest.mark.parametrize("spec", [
    "cyclotomic:9", "cyclotomic:4", "fp:19:9", "fp:31:15",
])
def test_field_axioms_on_powers_of_zeta(spec):
    F = make_field(spec)
    elems = [F.zeta**k + F.from_int(n) for k in range(F.L) for n in (-1, 0, 2)]
    for a in elems[:6]:
        for b in elems[:6]:
            assert a + b == b + a
            assert a * b == b * a
            assert (a - b) + b == a
            if not b.is_zero():
                assert (a / b) * b == a
    a = elems[1]
    assert a + F.zero == a
    assert a * F.one == a
    assert a + (-a) == F.zero


@settings(max_examples=100)
@given(
    num=st.integers(-30, 30),
    den=st.integers(1, 18),  # keep denominators invertible mod 19
    k=st.integers(0, 8),
)
def test_from_fraction_is_a_ring_map(num, den, k):
    for spec in ("cyclotomic:9", "fp:19:9"):
        F = make_field(spec)
        q = Fraction(num, den)
        a = F.from_fraction(q)
        assert a + a == F.from_fraction(2 * q)
        assert a * F.from_fraction(q) == F.from_fraction(q * q)
        assert F.zeta**k * a == a * F.zeta**k


def test_root_of_unity_orders():
    F = make_field("fp:31:15")
    for d in (1, 3, 5, 15):
        r = F.root_of_unity(d)
        assert F.order(r) == d
    with pytest.raises(NotDivisor):
        F.root_of_unity(4)


def test_negative_powers_and_inverse():
    F = make_field("cyclotomic:9")
    z = F.zeta
    assert z**-1 * z == F.one
    assert z**-5 == (z**5).inverse()
    with pytest.raises(ZeroElement):
        F.zero.inverse()


@pytest.mark.parametrize("spec", [
    "fp:20:9",      # not prime
    "fp:2:1",       # characteristic 2
    "fp:17:9",      # 17 != 1 mod 9
    "fp:7:9",       # p <= L
    "cyclotomic:0",
    "nonsense:5",
])
def test_bad_field_specs_rejected(spec):
    with pytest.raises((InvalidSpec, ValueError)):
        make_field(spec)


def test_prime_field_zeta_is_smallest_generator():
    # deterministic choice: the least residue of exact order L
    F = make_field("fp:19:9")
    v = F.zeta.value
    for cand in range(2, v):
        s = F.from_int(cand)
        if not s.is_zero() and F.order(s) == 9:
            pytest.fail(f"{cand} has order 9 but zeta = {v}")

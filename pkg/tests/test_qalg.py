"""Exact Laurent arithmetic: ring/field axioms, quantum integers, binomials.

Quantum binomial values are checked against an independent rational
product oracle evaluated at several sample points.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from glnwebs.qalg import (
    LaurentFraction,
    LaurentPoly,
    UnluckySpecialization,
    qbinom,
    qfact,
    qint,
)


def poly(N, terms):
    return LaurentPoly(N, terms)


# -- independent oracle ---------------------------------------------------------


def qint_at(m, q0):
    """[m] = (q^m - q^-m)/(q - q^-1) evaluated at a rational point."""
    q0 = Fraction(q0)
    return sum(q0 ** (m - 1 - 2 * i) for i in range(m)) if m >= 0 else -qint_at(-m, q0)


def qbinom_at(m, k, q0):
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    den = Fraction(1)
    for i in range(k):
        num *= qint_at(m - i, q0)
        den *= qint_at(i + 1, q0)
    return num / den


POINTS = (Fraction(2), Fraction(7, 2), Fraction(-3, 5))


@pytest.mark.parametrize("m", range(0, 7))
@pytest.mark.parametrize("k", range(0, 5))
def test_qbinom_matches_product_oracle(m, k):
    p = qbinom(m, k, 1)
    for q0 in POINTS:
        assert p.specialize(q0) == qbinom_at(m, k, q0)


@pytest.mark.parametrize("m,k", [(-1, 1), (-2, 2), (-1, 3), (-3, 1)])
def test_qbinom_negative_upper_argument(m, k):
    p = qbinom(m, k, 1)
    for q0 in POINTS:
        assert p.specialize(q0) == qbinom_at(m, k, q0)


def test_small_quantum_integers():
    assert str(qint(1, 1)) == "1"
    assert str(qint(2, 1)) == "q + q^-1"
    assert str(qint(3, 1)) == "q^2 + 1 + q^-2"
    assert str(qbinom(4, 2, 1)) == "q^4 + q^2 + 2 + q^-2 + q^-4"


def test_qfact():
    for k in range(5):
        expect = LaurentPoly.one(1)
        for i in range(1, k + 1):
            expect = expect * qint(i, 1)
        assert qfact(k, 1) == expect


# -- polynomial ring axioms -------------------------------------------------------

small_polys = st.builds(
    lambda d: LaurentPoly(2, d),
    st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=4),
)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_specialize_is_a_homomorphism(a, b):
    u0 = Fraction(3, 2)
    assert (a * b).specialize(u0) == a.specialize(u0) * b.specialize(u0)
    assert (a + b).specialize(u0) == a.specialize(u0) + b.specialize(u0)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_bar_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_divmod_exact_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = a.divmod_exact(b)
    if q is None:
        return
    assert q * b + r == a


# -- fraction field ----------------------------------------------------------------


def frac(a, b):
    return LaurentFraction(a, b)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_fraction_cancellation(a, b, c):
    if b.is_zero() or c.is_zero():
        return
    assert frac(a * c, b * c) == frac(a, b)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_fraction_mul_inverse(a, b):
    if a.is_zero() or b.is_zero():
        return
    x = frac(a, b)
    assert x * x.inv() == LaurentFraction.one(2)


def test_fraction_is_integral():
    two = LaurentFraction.from_poly(qint(2, 1))
    assert two.is_integral()
    assert not two.inv().is_integral()
    assert (two.inv() * two).is_integral()


def test_unlucky_specialization():
    x = LaurentFraction(LaurentPoly.one(1), LaurentPoly(1, {1: 1, -1: -1}))
    with pytest.raises(UnluckySpecialization):
        x.specialize(Fraction(1))
    assert x.specialize(Fraction(2)) == Fraction(2, 3)

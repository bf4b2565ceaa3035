from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from cayley.core.scalar import HALF, I, ONE, SQRT2, ZERO, Scalar, ScalarError, as_scalar, sqrt_real


EPS = 1e-9

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.builds(Scalar, rationals, rationals, rationals, rationals)


# -----------------------------
# 体の公理
# -----------------------------


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_field_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@settings(max_examples=60, deadline=None)
@given(scalars)
def test_inverse(x):
    assume(not x.is_zero())
    assert x * x.inv() == ONE
    assert x / x == ONE


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_conjugation_is_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.norm2().is_real()


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_float_shadow(x, y):
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < EPS * 100


def test_units():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == 2
    assert HALF + HALF == ONE
    assert Scalar(Fraction(3, 5), 0, Fraction(4, 5)).norm2() == 1


def test_zero_division():
    with pytest.raises(ScalarError):
        ZERO.inv()


def test_as_scalar_rejects_float():
    with pytest.raises(ScalarError):
        as_scalar(0.5)  # type: ignore[arg-type]


# -----------------------------
# 符号と平方根
# -----------------------------


def test_exact_sign():
    assert (ONE - SQRT2).sign() == -1
    assert (Scalar(Fraction(3, 2)) - SQRT2).sign() == 1
    assert Scalar(-7, 5).sign() == 1  # -7 + 5√2 > 0
    with pytest.raises(ScalarError):
        I.sign()


def test_sqrt_real():
    assert sqrt_real(Fraction(9, 4)) == Scalar(Fraction(3, 2))
    assert sqrt_real(2) == SQRT2
    assert sqrt_real(Fraction(1, 2)) == Scalar(b=Fraction(1, 2))
    assert sqrt_real(Scalar(3, 2)) == ONE + SQRT2
    assert sqrt_real(0) == ZERO


@pytest.mark.parametrize("value", [3, -1, Scalar(c=1)])
def test_sqrt_real_outside_field(value):
    with pytest.raises(ScalarError):
        sqrt_real(value)

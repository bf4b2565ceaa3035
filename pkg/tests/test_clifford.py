from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cayley.clifford import (
    Spinor,
    SpinorError,
    apply_string,
    bilinear_k,
    clifford_defects,
    conjugate_spinor,
    gamma,
    gamma_action,
    spin_generators,
    spinor_pairing,
    stabilizer_dim,
)
from cayley.core.common import ETA
from cayley.core.exterior import Vector
from cayley.core.scalar import HALF, I, ONE, Scalar
from cayley.families import octonion_cayley_form, psi_L, psi_p_riemannian

SIGNATURES = ["8,0", "4,4"]

small = st.integers(min_value=-2, max_value=2)
vectors8 = st.lists(small, min_size=8, max_size=8).map(
    lambda vals: Vector(tuple(range(8)), tuple(Scalar(Fraction(v)) for v in vals))
)


def plus_spinors(signature: str):
    return st.lists(small, min_size=8, max_size=8).map(lambda vals: Spinor.plus(vals, signature))


def eta_norm(v: Vector, signature: str) -> Scalar:
    acc = Scalar()
    for s, x in zip(ETA[signature], v.comps):
        acc = acc + (x * x if s > 0 else -(x * x))
    return acc


# -----------------------------
# Clifford 関係式
# -----------------------------


@pytest.mark.parametrize("signature", SIGNATURES)
def test_clifford_relations(signature):
    assert clifford_defects(signature) == []


@pytest.mark.parametrize("signature", SIGNATURES)
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_gamma_action_squares_to_norm(signature, data):
    v = data.draw(vectors8)
    psi = data.draw(plus_spinors(signature))
    assert gamma_action(v, gamma_action(v, psi)) == psi * eta_norm(v, signature)


def test_gamma_zero_swaps_chirality():
    psi = Spinor.one("8,0")
    assert apply_string((0,), psi).parity == "minus"
    assert apply_string((0, 0), psi) == psi
    assert len(gamma("4,4").perms) == 8


def test_bad_signature():
    with pytest.raises(SpinorError):
        Spinor.one("2,6")
    with pytest.raises(SpinorError):
        Spinor("8,0", (ONE,) * 8)


# -----------------------------
# 双線形形式
# -----------------------------


@pytest.mark.parametrize("signature, algebra", [("8,0", "O"), ("4,4", "Osplit")])
def test_cayley_form_from_identity_spinor(signature, algebra):
    one = Spinor.one(signature)
    phi = bilinear_k(4, one, one)
    assert phi == octonion_cayley_form(algebra)
    if signature == "8,0":
        assert phi[(1, 2, 3, 4)] == -1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_low_degree_bilinears_vanish_on_identity(k):
    one = Spinor.one("8,0")
    assert bilinear_k(k, one, one).is_zero()


def test_bilinear_zero_is_pairing():
    psi = psi_p_riemannian()
    hat = conjugate_spinor(psi)
    assert bilinear_k(0, hat, psi)[()] == spinor_pairing(hat, psi)
    assert spinor_pairing(hat, psi) == HALF


def test_bilinear_rejects_bad_input():
    one = Spinor.one("8,0")
    with pytest.raises(SpinorError):
        bilinear_k(9, one, one)
    with pytest.raises(SpinorError):
        bilinear_k(4, apply_string((0,), one), one)
    with pytest.raises(SpinorError):
        bilinear_k(4, one, Spinor.one("4,4"))


def test_conjugation_is_involution():
    psi = psi_L()
    assert conjugate_spinor(conjugate_spinor(psi)) == psi
    assert conjugate_spinor(Spinor.one("4,4") * I) == Spinor.one("4,4") * -I


# -----------------------------
# 安定化部分環
# -----------------------------


def test_spin_generators_count():
    assert len(spin_generators("8,0")) == 28
    assert len(spin_generators("4,4")) == 28


@pytest.mark.parametrize(
    "psi, expected",
    [
        (Spinor.one("8,0"), 21),
        (Spinor.one("4,4"), 21),
        (psi_p_riemannian(), 15),
        (psi_L(), 15),
    ],
)
def test_stabilizer_dimensions(psi, expected):
    assert stabilizer_dim(psi).dim == expected


def test_stabilizer_of_zero():
    with pytest.raises(SpinorError):
        stabilizer_dim(Spinor.plus([0] * 8))

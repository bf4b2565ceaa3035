from __future__ import annotations

import pytest

from cayley.clifford import Spinor, SpinorError, conjugate_spinor
from cayley.core.exterior import Endomorphism
from cayley.core.scalar import I, ONE, ZERO
from cayley import spinors
from cayley.families import (
    build_family,
    mixed_pair,
    printed_Omega,
    printed_Omega_pm,
    printed_omega,
    printed_omega_r,
    psi_L,
    psi_p_riemannian,
    psi_p_split,
    psi_pm,
)
from cayley.spinors import (
    annihilator,
    intersection_type,
    is_decomposable,
    is_pure,
    is_totally_null,
    real_index,
    structure_from_pure,
    structure_from_real_pair,
)


def cov(comps):
    return [comps.get(k, ZERO) for k in range(8)]


# -----------------------------
# 純粋性
# -----------------------------


@pytest.mark.parametrize(
    "psi",
    [psi_p_riemannian(), psi_p_split(), psi_pm(1), psi_pm(-1), mixed_pair()[0], mixed_pair()[1]],
)
def test_pure_seeds(psi):
    assert is_pure(psi)
    sub = annihilator(psi)
    assert sub.dim == 4
    assert is_totally_null(sub)


@pytest.mark.parametrize("psi", [Spinor.one("8,0"), Spinor.one("4,4"), psi_L()])
def test_impure_seeds(psi):
    assert not is_pure(psi)
    assert annihilator(psi).dim == 0
    with pytest.raises(SpinorError):
        real_index(psi)


def test_tau_seed_is_not_pure():
    psi = build_family("riemannianComplexTau", 2).seed
    assert not is_pure(psi)
    assert annihilator(psi).dim == 0


def test_purity_criteria_must_agree(monkeypatch):
    psi = Spinor.one("8,0")
    pure_annihilator = spinors.annihilator(psi_p_riemannian())
    monkeypatch.setattr(spinors, "annihilator", lambda s: pure_annihilator)
    with pytest.raises(SpinorError):
        is_pure(psi)


def test_purity_needs_plus_parity():
    with pytest.raises(SpinorError):
        is_pure(Spinor.minus([1] + [0] * 7))


# -----------------------------
# 消滅空間
# -----------------------------


def test_annihilator_spans():
    riem = [cov({4: ONE, 0: I}), cov({1: ONE, 5: I}), cov({2: ONE, 6: I}), cov({3: ONE, 7: I})]
    split = [cov({7: ONE, 0: I}), cov({1: ONE, 2: -I}), cov({3: ONE, 4: -I}), cov({5: ONE, 6: I})]
    assert annihilator(psi_p_riemannian()).same_span(riem)
    assert annihilator(psi_p_split()).same_span(split)
    assert not annihilator(psi_p_riemannian()).same_span(split)


def test_real_indices():
    assert real_index(psi_p_split()) == 0
    assert real_index(mixed_pair()[0]) == 2
    assert real_index(psi_pm(1)) == 4


# -----------------------------
# 交わり
# -----------------------------


def test_intersection_of_complementary_pairs():
    psi = psi_p_riemannian()
    assert intersection_type(psi, conjugate_spinor(psi)).common == 0
    assert intersection_type(psi_pm(1), psi_pm(-1)).common == 0
    assert intersection_type(psi, psi).common == 4


def test_intersection_needs_pure():
    with pytest.raises(SpinorError):
        intersection_type(Spinor.one("8,0"), psi_p_riemannian())


# -----------------------------
# 複素構造 / パラ複素構造
# -----------------------------


@pytest.mark.parametrize("seed, signature", [(psi_p_riemannian(), "8,0"), (psi_p_split(), "4,4")])
def test_complex_structure_matches_printed_forms(seed, signature):
    data = structure_from_pure(seed)
    assert data.omega == printed_omega(signature)
    assert data.Omega == printed_Omega(signature)
    assert data.J @ data.J == Endomorphism.identity() * -1
    assert is_decomposable(data.Omega)


def test_para_complex_structure_matches_printed_forms():
    data = structure_from_real_pair(psi_pm(1), psi_pm(-1))
    assert data.omega_r == printed_omega_r()
    assert data.Omega_plus == printed_Omega_pm(1)
    assert data.Omega_minus == printed_Omega_pm(-1)
    assert data.K @ data.K == Endomorphism.identity()


def test_structure_needs_normalised_seed():
    with pytest.raises(SpinorError):
        structure_from_pure(psi_p_riemannian() * 2)
    with pytest.raises(SpinorError):
        structure_from_real_pair(psi_pm(1), psi_pm(1))

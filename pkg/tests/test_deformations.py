from __future__ import annotations

from fractions import Fraction

import pytest

from cayley.clifford import Spinor
from cayley.core.exterior import Endomorphism, Vector
from cayley.core.scalar import I, ONE, Scalar
from cayley.deformations import (
    DeformationError,
    DualScalar,
    FibrePerturbation,
    basis_perturbations,
    building_blocks,
    decompose_wrt_K,
    decomposition_summary,
    eigenspace_bilinears,
    fibre_closed_form_dual,
    is_metric_preserving,
    leg_types,
    lorentzian_fibre_tangent,
    para_complex_K,
    riemannian_fibre_tangent,
    riemannian_tangent_rank,
    spin_orbit_intersection,
    tangent_rank,
)
from cayley.families import build_family

IMAG = tuple(range(1, 8))


def eigen_spinor(k: int, sign: int) -> Spinor:
    comps = [0] * 8
    comps[k] = 1
    comps[k + 4] = sign
    return Spinor.plus(comps, "4,4")


# -----------------------------
# 二重数
# -----------------------------


def test_dual_sqrt():
    r = DualScalar(Scalar(4), Scalar(1)).sqrt()
    assert r.value == 2
    assert r.eps == Fraction(1, 4)


def test_fibre_first_order():
    phi = build_family("riemannianReal").form
    y = Vector.basis(1, axes=IMAG)
    dual = fibre_closed_form_dual(y)
    assert dual.value == phi
    assert dual.eps == riemannian_fibre_tangent(y * 2, phi)


def test_fibre_dual_needs_imaginary_axes():
    with pytest.raises(DeformationError):
        fibre_closed_form_dual(Vector.basis(1))


# -----------------------------
# Riemannian ファイバー
# -----------------------------


def test_riemannian_tangent():
    phi = build_family("riemannianReal").form
    assert riemannian_tangent_rank(phi) == 7
    for a in IMAG:
        assert is_metric_preserving(phi, riemannian_fibre_tangent(Vector.basis(a, axes=IMAG), phi))


def test_riemannian_tangent_rejects_e0():
    with pytest.raises(DeformationError):
        riemannian_fibre_tangent(Vector.basis(0), build_family("riemannianReal").form)


# -----------------------------
# Lorentzian ファイバー
# -----------------------------


def test_basis_perturbations():
    perts = basis_perturbations()
    assert len(perts) == 13
    blocks = building_blocks()
    tangents = [lorentzian_fibre_tangent(p, blocks).bilinear for p in perts]
    assert tangent_rank(tangents) == 13


def test_scalar_direction():
    blocks = building_blocks()
    t = lorentzian_fibre_tangent(FibrePerturbation(a=1), blocks)
    assert t.bilinear == (blocks.Omega_plus + blocks.Omega_minus) * I
    assert t.bilinear == t.closed


@pytest.mark.parametrize(
    "kwargs",
    [
        {"a": I},
        {"a": 1, "b": 1},
        {"xi": (1, 0, 0, 0, 0)},
        {"xi": (0, 0, 0, 0, 1, 0, 0, 0)},
        {"eta": (I, 0, 0, 0, 0, 0)},
    ],
)
def test_bad_perturbations(kwargs):
    with pytest.raises(DeformationError):
        FibrePerturbation(**kwargs)


def test_transverse_to_metric():
    phi_L = build_family("lorentzian").form
    blocks = building_blocks()
    for p in basis_perturbations():
        assert is_metric_preserving(phi_L, lorentzian_fibre_tangent(p, blocks).bilinear)


def test_spin_orbit_intersection():
    assert spin_orbit_intersection() == 13


# -----------------------------
# K 固有空間
# -----------------------------


def test_para_complex_K():
    k = para_complex_K()
    assert k @ k == Endomorphism.identity()


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("k, eigen", [(k, s) for s in (1, -1) for k in range(4)])
def test_eigenspace_bilinears(sign, k, eigen):
    assert eigenspace_bilinears(sign, eigen_spinor(k, eigen)).witness() is None


def test_eigenspace_bilinears_rejects_mixed():
    mixed = Spinor.plus([1, 0, 0, 0, 0, 0, 0, 0], "4,4")
    with pytest.raises(DeformationError):
        eigenspace_bilinears(1, mixed)
    with pytest.raises(DeformationError):
        eigenspace_bilinears(1, Spinor.one("8,0"))


def test_leg_types_of_Omega():
    blocks = building_blocks()
    assert list(leg_types(blocks.Omega_plus)) == [(4, 0)]
    assert list(leg_types(blocks.Omega_minus)) == [(0, 4)]


def test_decompose_scalar_direction():
    blocks = building_blocks()
    t = lorentzian_fibre_tangent(FibrePerturbation(a=1), blocks).bilinear
    d = decompose_wrt_K(t, blocks=blocks)
    assert d.im_scalar == ONE
    assert d.re20.is_zero() and d.re02.is_zero()
    assert d.total() == t


def test_decompose_round_trip():
    blocks = building_blocks()
    p = FibrePerturbation(a=2, xi=(1, 0, 0, 0, 1, 0), eta=(0, 0, 1, 0, 0, 0))
    t = lorentzian_fibre_tangent(p, blocks).bilinear
    assert decompose_wrt_K(t, blocks=blocks).total() == t


def test_decompose_rejects_real_top_part():
    with pytest.raises(DeformationError):
        decompose_wrt_K(building_blocks().Omega_plus)


def test_decomposition_summary():
    s = decomposition_summary()
    assert (s.re_dim, s.im_dim, s.total_dim, s.bijective) == (12, 13, 13, True)

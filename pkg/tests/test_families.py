from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from cayley.clifford import Spinor, bilinear_k, stabilizer_dim
from cayley.core.common import ETA
from cayley.core.exterior import Endomorphism, SymBilinear, Vector, e, pullback
from cayley.core.scalar import I, Scalar
from cayley.families import (
    FAMILY_TAGS,
    REFERENCE_SIGNATURE,
    STABILIZER_DIMS,
    CalibrationError,
    CalibrationPlane,
    FamilyError,
    IdentityCheck,
    build_family,
    calibration_identity,
    closed_form_fibre,
    coordinate_calibrations,
    cosh2,
    drop_totally_antisymmetric,
    fibre_dimension,
    fibre_family,
    fibre_root,
    fibre_spinor,
    is_calibrated,
    lambda2_7_check,
    lambda2_metric,
    mixed_representation_check,
    orbit_dimension,
    orthonormal_basis,
    phi_theta_symmetry,
    psi_L,
    recover_metric,
    sinh2,
    verify_metric_compat,
    wedge_gram,
)

EPS = 1e-9
IMAG = tuple(range(1, 8))


def alpha(**comps) -> Vector:
    """alpha(e1=Fraction(3, 5)) -> (3/5) e1 on the imaginary axes."""
    return Vector.from_dict({int(k[1:]): v for k, v in comps.items()}, axes=IMAG)


# -----------------------------
# 族の構成
# -----------------------------


@pytest.mark.parametrize("tag", FAMILY_TAGS)
def test_build_family(tag):
    cf = build_family(tag)
    assert cf.signature == REFERENCE_SIGNATURE[tag]
    assert cf.form == cf.closed_form
    assert stabilizer_dim(cf.seed).dim == STABILIZER_DIMS[tag]
    assert cf.is_real == (tag in ("riemannianReal", "splitReal"))


def test_tau_parameter():
    assert cosh2(Scalar(2)) == Fraction(17, 8)
    assert sinh2(Scalar(2)) == Fraction(15, 8)
    assert build_family("riemannianComplexTau", 1).form == build_family("riemannianReal").form
    assert build_family("riemannianComplexTau", 2).parameter == 2


def test_theta_degenerations():
    assert build_family("splitComplexTheta", 1).form == build_family("splitReal").form
    right = build_family("splitComplexTheta", I)
    assert right.form.is_real()
    assert right.form != build_family("splitReal").form


@pytest.mark.parametrize(
    "tag, parameter",
    [
        ("riemannianComplexTau", -1),
        ("riemannianComplexTau", Scalar(0, 1)),
        ("splitComplexTheta", Scalar(1, 0, 1)),
        ("splitComplexTheta", Scalar(0, Fraction(1, 2), 0, Fraction(1, 2))),
        ("riemannianReal", 2),
        ("lorentzian", 1),
        ("unknown", None),
    ],
)
def test_bad_parameters(tag, parameter):
    with pytest.raises(FamilyError):
        build_family(tag, parameter)


def test_bad_seed_count():
    with pytest.raises(FamilyError):
        build_family("splitReal", seeds=[Spinor.one("4,4"), Spinor.one("4,4")])


def test_mixed_representation():
    assert mixed_representation_check().ok


def test_theta_symmetries():
    for cf in (build_family("splitComplexTheta"), build_family("lorentzian")):
        sym = phi_theta_symmetry(cf)
        assert sym.sign_flip_conjugation
        assert sym.swap_conjugation
    with pytest.raises(FamilyError):
        phi_theta_symmetry(build_family("riemannianReal"))


def test_identity_check_witness():
    same = IdentityCheck("same", e(0, 1, 2, 3), e(0, 1, 2, 3))
    assert same.holds and same.witness() is None
    diff = IdentityCheck("diff", e(0, 1, 2, 3), e(0, 1, 2, 3) * 2)
    assert diff.witness().startswith("e0123")


# -----------------------------
# 計量
# -----------------------------


@pytest.mark.parametrize(
    "tag, parameter",
    [("riemannianReal", None), ("splitReal", None), ("riemannianComplexTau", 2),
     ("splitComplexTheta", None), ("lorentzian", None)],
)
def test_compat_and_recover(tag, parameter):
    cf = build_family(tag, parameter)
    assert verify_metric_compat(cf.form, cf.reference_metric).ok
    rec = recover_metric(cf.form)
    assert np.max(np.abs(rec.metric.matrix - cf.reference_metric.to_array())) < EPS
    p, q = (8, 0) if cf.signature == "8,0" else (4, 4)
    assert rec.metric.signature == (p, q)


def test_wedge_gram_phi_part():
    phi = build_family("riemannianReal").form
    pairs = [(i, j) for i in range(8) for j in range(i + 1, 8)]
    p, q = pairs.index((0, 1)), pairs.index((2, 7))
    w = wedge_gram(phi)
    # the Λ²₇ / Λ²₂₁ splitting shows up as a Φ-shaped off-diagonal entry
    assert not w[p][q].is_zero()
    projected = drop_totally_antisymmetric(w, phi.axes)
    assert projected[p][q].is_zero()
    assert projected[p][p] == w[p][p]
    assert verify_metric_compat(phi, SymBilinear.delta(8)).ok


def test_drop_totally_antisymmetric_keeps_lambda2():
    g = SymBilinear.diagonal(ETA["4,4"])
    lg = lambda2_metric(g)
    assert drop_totally_antisymmetric(lg, g.axes) == lg


def frame_change() -> Endomorphism:
    lower = Endomorphism.identity() + Endomorphism.unit(5, 0) - Endomorphism.unit(5, 2)
    upper = Endomorphism.identity() + Endomorphism.unit(0, 4) - Endomorphism.unit(3, 7)
    scale = Endomorphism.from_rows([[d if r == c else 0 for c in range(8)] for r, d in
                                    enumerate([2, 1, -1, Fraction(1, 2), 1, 1, -2, 1])])
    return lower @ scale @ upper


@pytest.mark.parametrize("tag", ["riemannianReal", "splitReal"])
def test_recover_after_frame_change(tag):
    cf = build_family(tag)
    a = frame_change()
    expected = cf.reference_metric.transform(a).to_array()
    assert expected[0, 0] > 0
    rec = recover_metric(pullback(cf.form, a))
    assert np.max(np.abs(rec.metric.matrix - expected)) < 1e-8 * np.max(np.abs(expected))
    assert verify_metric_compat(pullback(cf.form, a), cf.reference_metric.transform(a)).ok


def test_compat_rejects_wrong_metric():
    phi = build_family("riemannianReal").form
    assert not verify_metric_compat(phi, SymBilinear.diagonal(ETA["4,4"])).ok
    res = verify_metric_compat(phi, SymBilinear.delta(8) * 2)
    assert not res.ok
    assert res.witness


def test_lambda2_split():
    split = lambda2_7_check(build_family("riemannianReal").form)
    assert (split.dim7, split.dim21) == (7, 21)


# -----------------------------
# 較正
# -----------------------------


@pytest.mark.parametrize("tag", ["riemannian", "split", "splitSecond", "lorentzian", "tau"])
def test_calibration_identities(tag):
    check = calibration_identity(tag)
    assert check.witness() is None


def test_coordinate_planes():
    cf = build_family("riemannianReal")
    g = SymBilinear.delta(8)
    hit = is_calibrated(cf, CalibrationPlane.coordinate((0, 1, 2, 7), g))
    assert hit.calibrated
    assert hit.kind == "riemannian"
    miss = is_calibrated(cf, CalibrationPlane.coordinate((0, 1, 2, 3), g))
    assert not miss.calibrated
    assert miss.value.is_zero()


def test_calibration_plane_errors():
    b = [Vector.basis(a) for a in range(8)]
    with pytest.raises(CalibrationError):
        CalibrationPlane(tuple(b[:3]), "riemannian")
    with pytest.raises(CalibrationError):
        CalibrationPlane((b[0], b[1], b[2], b[1] * 2), "riemannian")
    with pytest.raises(CalibrationError):
        # declared riemannian, but η restricts to a split plane
        is_calibrated(build_family("splitReal"), CalibrationPlane((b[0], b[1], b[2], b[7]), "riemannian"))


def test_orthonormal_basis_with_null_vectors():
    g = SymBilinear.diagonal(ETA["4,4"])
    e0, e4 = Vector.basis(0), Vector.basis(4)
    basis = orthonormal_basis([e0 + e4, e0 - e4], g)
    assert [[g.pair(u, v) for v in basis] for u in basis] == [[1, 0], [0, -1]]


@pytest.mark.parametrize("tag", ["riemannianReal", "splitReal", "lorentzian"])
def test_coordinate_calibrations(tag):
    cf = build_family(tag)
    found = coordinate_calibrations(cf)
    # every nonzero coefficient is a unit of the family
    assert len(found) == len(cf.form.coeffs) == 14


# -----------------------------
# 軌道とファイバー
# -----------------------------


@pytest.mark.parametrize(
    "tag, parameter, expected",
    [("riemannianReal", None, 43), ("splitReal", None, 43),
     ("riemannianComplexTau", 2, 49), ("lorentzian", None, 49)],
)
def test_orbit_dimension(tag, parameter, expected):
    assert orbit_dimension(build_family(tag, parameter).form) == expected


def test_fibre_dimensions():
    riem = fibre_dimension(Spinor.one("8,0"))
    assert (riem.tangent_dim, riem.image_rank) == (7, 7)
    assert fibre_dimension(psi_L()).image_rank == 13


def test_fibre_closed_form():
    a = alpha(e1=Fraction(3, 5))
    assert fibre_root(a) == Fraction(4, 5)
    psi = fibre_spinor(a)
    phi = closed_form_fibre(a)
    assert phi == bilinear_k(4, psi, psi)
    assert phi != build_family("riemannianReal").form
    assert verify_metric_compat(phi, SymBilinear.delta(8)).ok


def test_fibre_at_origin():
    assert closed_form_fibre(Vector.zero(axes=IMAG)) == build_family("riemannianReal").form


def test_fibre_family():
    alphas = [alpha(e2=Fraction(3, 5)), alpha(e3=Fraction(4, 5)), alpha(e1=Fraction(1, 3), e2=Fraction(2, 3))]
    forms = fibre_family(alphas)
    assert len(forms) == 3
    for phi in forms:
        assert verify_metric_compat(phi, SymBilinear.delta(8)).ok


@pytest.mark.parametrize("a", [alpha(e1=1), alpha(e1=Fraction(1, 2))])
def test_fibre_root_errors(a):
    # |α| = 1 is outside the ball, √(3/4) is outside the field
    with pytest.raises(FamilyError):
        fibre_root(a)

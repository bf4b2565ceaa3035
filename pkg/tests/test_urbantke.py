from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from cayley.core.common import ETA
from cayley.core.exterior import SymBilinear, e
from cayley.families import build_family
from cayley.urbantke import (
    FormTriple,
    UrbantkeError,
    conformal_residual,
    lower_bivector,
    raise_bivector,
    reality_check,
    reduce_from_cayley,
    sigma_bivectors,
    sigma_triple,
    urbantke_metric,
    worked_reduction,
)

EPS = 1e-9


# -----------------------------
# Σ トリプル
# -----------------------------


@pytest.mark.parametrize(
    "kind, signature",
    [("riemannian", (4, 0)), ("split", (2, 2)), ("lorentzian", (3, 1))],
)
def test_sigma_triple_signatures(kind, signature):
    res = urbantke_metric(sigma_triple(kind))
    assert res.signature == signature
    assert res.residual < EPS


def test_split_triple_has_mixed_wedge_gram():
    gram = sigma_triple("split").wedge_gram()
    assert [gram[i][i] for i in range(3)] == [-2, -2, 2]
    assert all(gram[i][j].is_zero() for i in range(3) for j in range(3) if i != j)


def test_unknown_triple_kind():
    with pytest.raises(UrbantkeError):
        sigma_triple("splitSecond")


def test_euclidean_triple_gives_delta():
    res = urbantke_metric(sigma_triple("riemannian"))
    assert np.allclose(res.metric, np.eye(4), atol=EPS)
    assert res.duality in (1, -1)


def test_lorentzian_triple_is_imaginary_self_dual():
    res = urbantke_metric(sigma_triple("lorentzian"))
    assert res.duality in (1j, -1j)
    assert conformal_residual(res.metric, np.diag([-1.0, 1.0, 1.0, 1.0])) < EPS


def test_rotation_and_scale():
    t = sigma_triple("split")
    base = urbantke_metric(t).metric
    rot = [[Fraction(3, 5), Fraction(-4, 5), 0], [Fraction(4, 5), Fraction(3, 5), 0], [0, 0, 1]]
    assert np.allclose(urbantke_metric(t.rotate(rot)).metric, base, atol=EPS)
    # g̃ is cubic in B and g = g̃ / |det g̃|^{1/6}, so B -> 2B gives g -> 2g
    assert np.allclose(urbantke_metric(t.scale(2)).metric, 2 * base, atol=EPS)


# -----------------------------
# 実条件とエラー
# -----------------------------


def test_reality_conditions():
    assert reality_check(sigma_triple("lorentzian")).ok
    bad = reality_check(sigma_triple("riemannian"))
    assert not bad.ok
    assert bad.witness == (1, 1)


def test_real_triple_in_lorentzian_mode():
    forms = sigma_triple("riemannian").forms
    with pytest.raises(UrbantkeError):
        urbantke_metric(FormTriple(forms, "lorentzian"))


def test_degenerate_triple():
    b = e(0, 1, dim=4)
    with pytest.raises(UrbantkeError):
        urbantke_metric(FormTriple((b, b, b)))


@pytest.mark.parametrize(
    "forms, mode",
    [
        ((e(0, 1, dim=4), e(0, 2, dim=4)), "real"),
        ((e(0, 1, dim=4), e(0, 2, dim=4), e(0, 1, 2, dim=4)), "real"),
        ((e(0, 1, dim=4), e(0, 2, dim=4), e(1, 2)), "real"),
        ((e(0, 1, dim=4), e(0, 2, dim=4), e(0, 3, dim=4)), "complex"),
    ],
)
def test_triple_validation(forms, mode):
    with pytest.raises(UrbantkeError):
        FormTriple(forms, mode)


# -----------------------------
# 8 次元からの還元
# -----------------------------


@pytest.mark.parametrize(
    "name, signature",
    [("cayley-plus", (4, 0)), ("phi-split", (2, 2)), ("phi-L", (3, 1))],
)
def test_worked_reductions(name, signature):
    red = worked_reduction(name)
    assert red.residual < EPS
    assert red.metric.signature == signature


def test_reduction_on_uncalibrated_plane():
    with pytest.raises(UrbantkeError):
        reduce_from_cayley(build_family("riemannianReal"), (0, 1, 2, 3), sigma_bivectors("riemannian"))


def test_unknown_reduction():
    with pytest.raises(UrbantkeError):
        worked_reduction("phi-tau")


def test_raise_lower_bivector():
    g = SymBilinear.diagonal(ETA["4,4"])
    b = e(0, 1) + e(2, 5) * 3
    assert raise_bivector(b, g) == e(0, 1) * -1 + e(2, 5) * -3
    assert lower_bivector(raise_bivector(b, g), g) == b

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cayley.core.common import ETA
from cayley.core.exterior import SymBilinear, Vector, interior, metric_dual, wedge
from cayley.core.linalg import det
from cayley.core.scalar import ONE, ZERO, Scalar
from cayley.families import octonion_cayley_form
from cayley.octonion import (
    Octonion,
    OctonionError,
    algebra_from_cayley,
    associator,
    coassociative_from_associator,
    conjugate_via_unit,
    cross,
    cross_from_product,
    dual_phi_4form,
    metric_from_3form,
    norm2,
    pairing,
    phi_3form,
    phi_from_cross,
    split_by_unit_vector,
    triple_cross,
)

AXES8 = tuple(range(8))
IMAG = tuple(range(1, 8))

small = st.integers(min_value=-2, max_value=2)


def octonions(algebra: str):
    return st.lists(small, min_size=8, max_size=8).map(
        lambda vals: Octonion(algebra, tuple(Scalar(Fraction(v)) for v in vals))
    )


vectors8 = st.lists(small, min_size=8, max_size=8).map(
    lambda vals: Vector(AXES8, tuple(Scalar(Fraction(v)) for v in vals))
)


def E(a: int, algebra: str = "O") -> Octonion:
    return Octonion.basis(a, algebra)


# -----------------------------
# 乗法表
# -----------------------------


def test_multiplication_examples():
    assert E(5) * E(6) == E(7)
    assert E(5, "Osplit") * E(2, "Osplit") == -E(3, "Osplit")
    assert E(1, "Osplit") * E(1, "Osplit") == Octonion.unit("Osplit")
    assert E(1) * E(1) == -Octonion.unit("O")
    assert E(1) * E(0) == E(1)


def test_algebra_mismatch():
    with pytest.raises(OctonionError):
        E(1) * E(1, "Osplit")
    with pytest.raises(OctonionError):
        Octonion("H", (ONE,) * 8)


@pytest.mark.parametrize("algebra", ["O", "Osplit"])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_composition_and_alternativity(algebra, data):
    x = data.draw(octonions(algebra))
    y = data.draw(octonions(algebra))
    assert norm2(x * y) == norm2(x) * norm2(y)
    assert (x * x) * y == x * (x * y)
    assert y * (x * x) == (y * x) * x


@pytest.mark.parametrize("algebra", ["O", "Osplit"])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_moufang(algebra, data):
    x, y, z = (data.draw(octonions(algebra)) for _ in range(3))
    assert z * (x * (z * y)) == ((z * x) * z) * y


def test_pairing_signature():
    for algebra, sig in (("O", "8,0"), ("Osplit", "4,4")):
        assert [pairing(E(a, algebra), E(a, algebra)) for a in range(8)] == list(ETA[sig])


# -----------------------------
# クロス積と 3-form
# -----------------------------


@pytest.mark.parametrize("algebra", ["O", "Osplit"])
def test_cross_matches_product_on_basis_pairs(algebra):
    for a, b in combinations(IMAG, 2):
        u, v = E(a, algebra), E(b, algebra)
        assert cross(u, v) == cross_from_product(u, v)
        assert pairing(cross(u, v), u) == ZERO


@pytest.mark.parametrize("algebra", ["O", "Osplit"])
def test_phi_from_cross(algebra):
    assert phi_from_cross(algebra) == phi_3form(algebra)


def test_cross_needs_imaginary():
    with pytest.raises(OctonionError):
        cross(E(0), E(1))
    assert cross(E(3), E(3)) == Octonion("O", (ZERO,) * 8)


def test_associator_gives_dual_form():
    star = dual_phi_4form("O")
    for idx in combinations(IMAG, 4):
        u, v, w, x = (E(a) for a in idx)
        assert coassociative_from_associator(u, v, w, x) == star[idx]
    assert associator(E(1), E(1), E(2)) == Octonion("O", (ZERO,) * 8)


# -----------------------------
# 7 次元の計量
# -----------------------------


def test_metric_from_g2_form():
    tm = metric_from_3form(phi_3form("O"))
    delta = SymBilinear.delta(7)
    assert tm.metric is not None
    assert tm.metric == delta
    assert tm.signature == (7, 0)


def test_metric_from_split_form():
    tm = metric_from_3form(phi_3form("Osplit"))
    assert tm.metric is not None
    assert tm.metric.is_diagonal()
    assert sorted(tm.signature) == [3, 4]


def test_metric_from_scaled_form_keeps_density():
    base = metric_from_3form(phi_3form("O"))
    tm = metric_from_3form(phi_3form("O") * 2)
    # det scales by 2^21, whose ninth root is irrational
    assert tm.metric is None
    assert tm.density == base.density * 8


# -----------------------------
# Cayley form からの代数
# -----------------------------


def test_triple_cross_basis():
    phi = octonion_cayley_form("O")
    g = SymBilinear.delta(8)
    b = [Vector.basis(a) for a in AXES8]
    assert triple_cross(b[1], b[2], b[3], phi, g) == b[4]
    assert triple_cross(b[1], b[1], b[3], phi, g) == Vector.zero()


@settings(max_examples=25, deadline=None)
@given(vectors8, vectors8, vectors8)
def test_triple_cross_gram_law(u, v, w):
    phi = octonion_cayley_form("O")
    g = SymBilinear.delta(8)
    t = triple_cross(u, v, w, phi, g)
    gram = [[g.pair(x, y) for y in (u, v, w)] for x in (u, v, w)]
    assert g.pair(t, t) == det(gram)
    assert g.pair(t, u) == ZERO


@pytest.mark.parametrize("algebra, sig", [("O", "8,0"), ("Osplit", "4,4")])
def test_algebra_from_cayley_reproduces_table(algebra, sig):
    g = SymBilinear.diagonal(ETA[sig])
    alg = algebra_from_cayley(octonion_cayley_form(algebra), Vector.basis(0), g)
    table = alg.table()
    for a in AXES8:
        for b in AXES8:
            assert table[a][b] == (E(a, algebra) * E(b, algebra)).to_vector()


def test_algebra_from_cayley_needs_unit():
    with pytest.raises(OctonionError):
        algebra_from_cayley(octonion_cayley_form("O"), Vector.basis(0) * 2, SymBilinear.delta(8))


def test_conjugate_via_unit():
    g = SymBilinear.delta(8)
    e0 = Vector.basis(0)
    assert conjugate_via_unit(e0, e0, g) == e0
    assert conjugate_via_unit(Vector.basis(3), e0, g) == -Vector.basis(3)


@pytest.mark.parametrize("algebra", ["O", "Osplit"])
def test_split_by_unit_vector(algebra):
    sig = "8,0" if algebra == "O" else "4,4"
    g = SymBilinear.diagonal(ETA[sig])
    split = split_by_unit_vector(octonion_cayley_form(algebra), Vector.basis(0), g)
    assert split.epsilon == -1
    assert split.complement == IMAG
    assert split.phi_e.restrict(IMAG) == phi_3form(algebra)
    assert split.psi_e.restrict(IMAG) == dual_phi_4form(algebra)


@pytest.mark.parametrize(
    "algebra, comps",
    [("O", {0: Fraction(3, 5), 1: Fraction(4, 5)}),
     ("O", {2: Fraction(2, 3), 5: Fraction(1, 3), 7: Fraction(2, 3)}),
     ("Osplit", {0: Fraction(5, 4), 4: Fraction(3, 4)})],
)
def test_split_by_general_unit_vector(algebra, comps):
    g = SymBilinear.diagonal(ETA["8,0" if algebra == "O" else "4,4"])
    phi4 = octonion_cayley_form(algebra)
    unit = Vector.from_dict(comps)
    split = split_by_unit_vector(phi4, unit, g)
    assert split.epsilon == -1
    assert split.complement is None
    assert split.phi_e == interior(unit, phi4)
    assert interior(unit, split.psi_e).is_zero()
    assert wedge(metric_dual(unit, g), split.phi_e) + split.psi_e * split.epsilon == phi4


def test_split_by_unit_vector_needs_unit():
    with pytest.raises(OctonionError):
        split_by_unit_vector(octonion_cayley_form("O"), Vector.basis(0) * 2, SymBilinear.delta(8))

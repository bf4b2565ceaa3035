# cayley/octonion.py
"""
Octonions O and split octonions O' in the 8-column model (q0 on top),
their cross / triple cross products, and metric recovery from a 3-form on R^7.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .core.common import ETA, Index
from .core.exterior import (
    Form,
    FormError,
    MetricError,
    SymBilinear,
    Vector,
    hodge,
    interior,
    metric_dual,
    volume,
    wedge,
)
from .core.scalar import HALF, ONE, ZERO, Scalar, ScalarLike, as_scalar, rational_root

logger = logging.getLogger("cayley.octonion")


class OctonionError(RuntimeError):
    """Octonion operation got mismatched algebras, a non-imaginary or a non-unit input."""


ALGEBRAS = ("O", "Osplit")
SIGNATURE_OF = {"O": "8,0", "Osplit": "4,4"}
ALGEBRA_OF = {v: k for k, v in SIGNATURE_OF.items()}

# -----------------------------
# left multiplication tables
# -----------------------------
# E_a = Σ sign·(E_ij - E_ji), E_ij the matrix unit; split directions 1..4
# use the symmetric combination sign·(E_ij + E_ji) instead.
_E_TERMS: Dict[int, Tuple[Tuple[int, int, int], ...]] = {
    1: ((-1, 0, 1), (1, 2, 7), (-1, 3, 6), (1, 4, 5)),
    2: ((-1, 0, 2), (-1, 1, 7), (1, 3, 5), (1, 4, 6)),
    3: ((-1, 0, 3), (1, 1, 6), (-1, 2, 5), (1, 4, 7)),
    4: ((-1, 0, 4), (-1, 1, 5), (-1, 2, 6), (-1, 3, 7)),
    5: ((-1, 0, 5), (1, 1, 4), (1, 2, 3), (-1, 6, 7)),
    6: ((-1, 0, 6), (-1, 1, 3), (1, 2, 4), (1, 5, 7)),
    7: ((-1, 0, 7), (1, 1, 2), (1, 3, 4), (-1, 5, 6)),
}
_S_TERMS: Dict[int, Tuple[Tuple[int, int, int], ...]] = {
    1: ((1, 0, 1), (1, 2, 7), (-1, 3, 6), (1, 4, 5)),
    2: ((1, 0, 2), (-1, 1, 7), (1, 3, 5), (1, 4, 6)),
    3: ((1, 0, 3), (1, 1, 6), (-1, 2, 5), (1, 4, 7)),
    4: ((1, 0, 4), (-1, 1, 5), (-1, 2, 6), (-1, 3, 7)),
}

Entries = Tuple[Tuple[int, int, int], ...]  # (row, col, value)


@lru_cache(maxsize=None)
def left_entries(algebra: str, a: int) -> Entries:
    if algebra == "Osplit" and a in _S_TERMS:
        return tuple(x for s, i, j in _S_TERMS[a] for x in ((i, j, s), (j, i, s)))
    return tuple(x for s, i, j in _E_TERMS[a] for x in ((i, j, s), (j, i, -s)))


def left_matrix(a: int, algebra: str = "O") -> List[List[Scalar]]:
    """8x8 matrix of left multiplication by the a-th imaginary unit (a = 1..7)."""
    check_algebra(algebra)
    if not 1 <= a <= 7:
        raise OctonionError(f"imaginary unit index out of range: {a}")
    out = [[ZERO] * 8 for _ in range(8)]
    for r, c, v in left_entries(algebra, a):
        out[r][c] = as_scalar(v)
    return out


def check_algebra(algebra: str) -> str:
    if algebra not in ALGEBRAS:
        raise OctonionError(f"Unsupported algebra tag: {algebra}")
    return algebra


# =========================
# Octonion
# =========================

@dataclass(frozen=True, eq=False)
class Octonion:
    algebra: str
    comps: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        check_algebra(self.algebra)
        comps = tuple(as_scalar(x) for x in self.comps)
        if len(comps) != 8:
            raise OctonionError(f"octonion needs 8 components, got {len(comps)}")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def basis(cls, a: int, algebra: str = "O") -> "Octonion":
        return cls(algebra, tuple(ONE if k == a else ZERO for k in range(8)))

    @classmethod
    def unit(cls, algebra: str = "O") -> "Octonion":
        return cls.basis(0, algebra)

    @classmethod
    def from_vector(cls, v: Vector, algebra: str = "O") -> "Octonion":
        """8-vector (e0..e7) or imaginary 7-vector (e1..e7)."""
        if v.axes == tuple(range(8)):
            return cls(algebra, v.comps)
        if v.axes == tuple(range(1, 8)):
            return cls(algebra, (ZERO,) + v.comps)
        raise OctonionError(f"cannot read an octonion from axes {v.axes}")

    def to_vector(self) -> Vector:
        return Vector(tuple(range(8)), self.comps)

    def imaginary(self) -> Vector:
        if not self.is_imaginary():
            raise OctonionError(f"octonion has a real part {self.comps[0]}")
        return Vector(tuple(range(1, 8)), self.comps[1:])

    def is_imaginary(self) -> bool:
        return self.comps[0].is_zero()

    def real_part(self) -> Scalar:
        return self.comps[0]

    def conj(self) -> "Octonion":
        return Octonion(self.algebra, (self.comps[0],) + tuple(-x for x in self.comps[1:]))

    def _check(self, other: "Octonion") -> None:
        if self.algebra != other.algebra:
            raise OctonionError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other: "Octonion") -> "Octonion":
        self._check(other)
        return Octonion(self.algebra, tuple(x + y for x, y in zip(self.comps, other.comps)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        self._check(other)
        return Octonion(self.algebra, tuple(x - y for x, y in zip(self.comps, other.comps)))

    def __neg__(self) -> "Octonion":
        return Octonion(self.algebra, tuple(-x for x in self.comps))

    def __mul__(self, other) -> "Octonion":
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        s = as_scalar(other)
        return Octonion(self.algebra, tuple(s * x for x in self.comps))

    def __rmul__(self, other: ScalarLike) -> "Octonion":
        s = as_scalar(other)
        return Octonion(self.algebra, tuple(s * x for x in self.comps))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.algebra == other.algebra and self.comps == other.comps

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = " + ".join(f"({x}) e{k}" for k, x in enumerate(self.comps) if not x.is_zero())
        return f"Octonion[{self.algebra}]({body or '0'})"


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    """xy = L_x y with L_x = x0 𝕀 + Σ x_a E_a."""
    x._check(y)
    out = [x.comps[0] * c for c in y.comps]
    for a in range(1, 8):
        xa = x.comps[a]
        if xa.is_zero():
            continue
        for r, c, v in left_entries(x.algebra, a):
            yc = y.comps[c]
            if not yc.is_zero():
                out[r] = out[r] + (xa * yc if v > 0 else -(xa * yc))
    return Octonion(x.algebra, tuple(out))


def pairing(x: Octonion, y: Octonion) -> Scalar:
    """(x, y) = Re(x ȳ): δ for O, diag(1,-1,-1,-1,-1,1,1,1) for O'."""
    x._check(y)
    eta = ETA[SIGNATURE_OF[x.algebra]]
    acc = ZERO
    for s, a, b in zip(eta, x.comps, y.comps):
        if not a.is_zero() and not b.is_zero():
            acc = acc + (a * b if s > 0 else -(a * b))
    return acc


def norm2(x: Octonion) -> Scalar:
    return pairing(x, x)


def associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion:
    return (x * y) * z - x * (y * z)


# =========================
# structure 3-forms
# =========================

def _phi_terms(sign: int) -> List[Tuple[Sequence[int], int]]:
    return [
        ((5, 6, 7), 1),
        ((5, 4, 1), sign), ((5, 2, 3), -sign),
        ((6, 4, 2), sign), ((6, 3, 1), -sign),
        ((7, 4, 3), sign), ((7, 1, 2), -sign),
    ]


def phi_3form(algebra: str = "O") -> Form:
    """
    φ = e567 + e5(e41 - e23) + e6(e42 - e31) + e7(e43 - e12);
    the split form flips every term containing one of e1..e4.
    """
    check_algebra(algebra)
    return Form.from_terms(_phi_terms(1 if algebra == "O" else -1), grade=3, dim=7)


def dual_phi_4form(algebra: str = "O") -> Form:
    """*φ = e1234 + e67(e41 - e23) + e75(e42 - e31) + e56(e43 - e12), split form likewise flipped."""
    check_algebra(algebra)
    s = 1 if algebra == "O" else -1
    terms = [
        ((1, 2, 3, 4), 1),
        ((6, 7, 4, 1), s), ((6, 7, 2, 3), -s),
        ((7, 5, 4, 2), s), ((7, 5, 3, 1), -s),
        ((5, 6, 4, 3), s), ((5, 6, 1, 2), -s),
    ]
    return Form.from_terms(terms, grade=4, dim=7)


def metric7(algebra: str = "O") -> SymBilinear:
    """Octonion pairing restricted to Im O (axes 1..7)."""
    return SymBilinear.diagonal(ETA[SIGNATURE_OF[check_algebra(algebra)]][1:])


@dataclass(frozen=True)
class CrossStructure:
    """Cross product on Im O encoded by (u×v, w) = φ(u, v, w)."""
    algebra: str
    phi: Form
    metric: SymBilinear

    def cross(self, u: Vector, v: Vector) -> Vector:
        # (u×v)^c = g^{cc} φ(u, v, e_c); the metric on Im O is diagonal
        alpha = interior(v, interior(u, self.phi))
        return metric_dual(alpha, self.metric)  # type: ignore[return-value]


@lru_cache(maxsize=None)
def structure(algebra: str = "O") -> CrossStructure:
    return CrossStructure(algebra, phi_3form(algebra), metric7(algebra))


def cross(u: Octonion, v: Octonion) -> Octonion:
    """u×v for imaginary u, v, from the structure 3-form."""
    u._check(v)
    if not (u.is_imaginary() and v.is_imaginary()):
        raise OctonionError("cross product needs imaginary octonions")
    w = structure(u.algebra).cross(u.imaginary(), v.imaginary())
    return Octonion.from_vector(w, u.algebra)


def cross_from_product(u: Octonion, v: Octonion) -> Octonion:
    """Im(uv) = uv + (u, v)𝕀 for imaginary u, v."""
    if not (u.is_imaginary() and v.is_imaginary()):
        raise OctonionError("cross product needs imaginary octonions")
    return u * v + Octonion.unit(u.algebra) * pairing(u, v)


def phi_from_cross(algebra: str = "O") -> Form:
    """φ(e_a, e_b, e_c) = (e_a e_b, e_c), rebuilt from the multiplication table."""
    terms = []
    for a in range(1, 8):
        for b in range(a + 1, 8):
            uv = cross_from_product(Octonion.basis(a, algebra), Octonion.basis(b, algebra))
            for c in range(b + 1, 8):
                val = pairing(uv, Octonion.basis(c, algebra))
                if not val.is_zero():
                    terms.append(((a, b, c), val))
    return Form.from_terms(terms, grade=3, dim=7)


def coassociative_from_associator(u: Octonion, v: Octonion, w: Octonion, x: Octonion) -> Scalar:
    """½([u, v, w], x); agrees with *φ(u, v, w, x) on Im O."""
    return HALF * pairing(associator(u, v, w), x)


# =========================
# Cayley-form side
# =========================

def triple_cross(u: Vector, v: Vector, w: Vector, phi4: Form, g: SymBilinear) -> Vector:
    """u×v×w defined by (x, u×v×w) = Φ(x, u, v, w)."""
    # Φ(x, u, v, w) = -Φ(u, v, w, x) and w⌟v⌟u⌟Φ is x ↦ Φ(u, v, w, x)
    alpha = -interior(w, interior(v, interior(u, phi4)))
    return metric_dual(alpha, g)  # type: ignore[return-value]


@dataclass(frozen=True)
class NormedAlgebra:
    """
    uv := u×e×v + (u,e)v + (v,e)u - (u,v)e built from a Cayley form with
    compatible metric g and unit vector e.
    """
    form: Form
    unit: Vector
    metric: SymBilinear

    def mul(self, u: Vector, v: Vector) -> Vector:
        g = self.metric
        e_ = self.unit
        return (triple_cross(u, e_, v, self.form, g)
                + v * g.pair(u, e_) + u * g.pair(v, e_) - e_ * g.pair(u, v))

    def table(self) -> List[List[Vector]]:
        axes = self.form.axes
        basis = [Vector.basis(a, axes=axes) for a in axes]
        return [[self.mul(u, v) for v in basis] for u in basis]

    def conjugate(self, u: Vector) -> Vector:
        return conjugate_via_unit(u, self.unit, self.metric)

    def norm2(self, u: Vector) -> Scalar:
        return self.metric.pair(u, u)


def algebra_from_cayley(phi4: Form, unit: Vector, g: SymBilinear) -> NormedAlgebra:
    if phi4.grade != 4:
        raise FormError(f"Cayley form must have grade 4, got {phi4.grade}")
    if not g.pair(unit, unit) == 1:
        raise OctonionError(f"unit vector has g(e,e) = {g.pair(unit, unit)}, expected 1")
    return NormedAlgebra(phi4, unit, g)


def conjugate_via_unit(u: Vector, unit: Vector, g: SymBilinear) -> Vector:
    """ū = 2(u, e)e - u."""
    return unit * (2 * g.pair(u, unit)) - u


@dataclass(frozen=True)
class UnitSplit:
    phi_e: Form
    psi_e: Form
    epsilon: int
    # coordinate complement of e when e is a basis direction, else None
    complement: Optional[Index]


def split_by_unit_vector(phi4: Form, unit: Vector, g: SymBilinear) -> UnitSplit:
    """
    Φ = e*∧φ_e + εψ_e with φ_e = e⌟Φ and ψ_e = *₇φ_e on e⊥.

    With vol₈ = e*∧vol₇, *₈β = (-1)^k e*∧*₇β for a k-form β killed by e⌟,
    so *₇φ_e = -e⌟*₈φ_e and no frame of e⊥ is needed.
    """
    if phi4.grade != 4:
        raise FormError(f"Cayley form must have grade 4, got {phi4.grade}")
    if not (unit.axes == g.axes == phi4.axes):
        raise OctonionError(f"axes mismatch: {unit.axes} / {g.axes} / {phi4.axes}")
    if not g.pair(unit, unit) == 1:
        raise OctonionError(f"unit vector has g(e,e) = {g.pair(unit, unit)}, expected 1")
    phi_e = interior(unit, phi4)
    residual = phi4 - wedge(metric_dual(unit, g), phi_e)  # type: ignore[arg-type]
    star = -interior(unit, hodge(phi_e, g, volume(axes=phi4.axes)))
    if residual == star:
        eps = 1
    elif residual == -star:
        eps = -1
    else:
        raise OctonionError("residual Φ - e*∧φ_e is not ±*φ_e: form is not of Cayley type for g")
    nz = unit.items()
    complement = tuple(a for a in phi4.axes if a != nz[0][0]) if len(nz) == 1 else None
    logger.debug("split_by_unit_vector: e=%s epsilon=%d", unit, eps)
    return UnitSplit(phi_e, residual * eps, eps, complement)



# =========================
# 7d metric from a 3-form
# =========================

@dataclass(frozen=True)
class ThreeFormMetric:
    """
    density: g̃ with (1/6)(u⌟φ)(v⌟φ)φ = g̃(u, v) e1..7.
    metric is None when |det g̃|^{1/9} leaves the scalar field.
    """
    density: SymBilinear
    density_det: Scalar
    metric: Optional[SymBilinear]
    orientation: Form
    signature: Tuple[int, int]


def metric_from_3form(phi: Form) -> ThreeFormMetric:
    if phi.grade != 3 or phi.dim != 7:
        raise FormError(f"metric_from_3form needs a 3-form on R^7, got grade {phi.grade} dim {phi.dim}")
    axes = phi.axes
    contractions = [interior(Vector.basis(a, axes=axes), phi) for a in axes]
    rows = []
    for i in range(7):
        ai_phi = wedge(contractions[i], phi)
        rows.append([(wedge(contractions[j], ai_phi).top_coefficient() / 6) for j in range(7)])
    density = SymBilinear(axes, rows)
    d = density.det()
    if d.is_zero():
        raise MetricError("3-form is degenerate: density matrix is singular")
    signature = density.signature()
    metric = None
    if d.is_rational():
        root = rational_root(abs(d.a), 9)
        if root is not None:
            metric = density * as_scalar(root).inv()
    if metric is None:
        logger.info("metric_from_3form: ninth root of %s is not exact; returning density", d)
    return ThreeFormMetric(density, d, metric, volume(axes=axes), signature)

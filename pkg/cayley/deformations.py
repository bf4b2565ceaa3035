# cayley/deformations.py
"""
同一計量のファイバー接空間。

Riemannian fibre: δΦ = e0∧(Y⌟Φ) - Y∧(e0⌟Φ) and the first-order term of the
closed-form fibre, expanded with a formal nilpotent ε.

Lorentzian fibre at Φ_L: δψ± = ±a(𝕀 ± ẽ4) + ξ⃗ / η⃗, the bilinear route
2δΦ_c = ⟨ψ_L, Γ̃Γ̃Γ̃Γ̃ δψ⟩ against the closed forms assembled from the
K-eigenspace building blocks, and the K leg-type decomposition.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .clifford import Spinor, bilinear_k, spin_generators, spinor_pairing
from .core.common import index_subsets
from .core.exterior import Endomorphism, Form, Vector, e, interior, lie_act, pullback, wedge, wedge_all
from .core.linalg import LinAlgError, intersection_dim, inverse, nullspace, rank, span_coefficients
from .core.scalar import HALF, I, ONE, ZERO, Scalar, ScalarLike, as_scalar, sqrt_real
from .families import (
    AXES8,
    LORENTZ_U,
    IdentityCheck,
    build_family,
    drop_totally_antisymmetric,
    one_form,
    psi_L,
    psi_pm,
)
from .octonion import dual_phi_4form, phi_3form
from .spinors import structure_from_real_pair

logger = logging.getLogger("cayley.deformations")

AXES7 = tuple(range(1, 8))
VECTOR_SLOTS = (1, 2, 3, 5, 6, 7)


class DeformationError(RuntimeError):
    """Perturbation violates the fibre constraints or leaves the expected decomposition."""


# =========================
# formal first order
# =========================

@dataclass(frozen=True)
class DualScalar:
    value: Scalar
    eps: Scalar = ZERO

    def __add__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.value + other.value, self.eps + other.eps)

    def __sub__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.value - other.value, self.eps - other.eps)

    def __mul__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.value * other.value, self.value * other.eps + self.eps * other.value)

    def sqrt(self) -> "DualScalar":
        root = sqrt_real(self.value)
        return DualScalar(root, self.eps / (root * 2))


@dataclass(frozen=True)
class DualVector:
    value: Vector
    eps: Vector


@dataclass(frozen=True)
class DualForm:
    value: Form
    eps: Form

    @classmethod
    def const(cls, a: Form) -> "DualForm":
        return cls(a, Form.zero(a.grade, axes=a.axes))

    def __add__(self, other: "DualForm") -> "DualForm":
        return DualForm(self.value + other.value, self.eps + other.eps)

    def __sub__(self, other: "DualForm") -> "DualForm":
        return DualForm(self.value - other.value, self.eps - other.eps)

    def scale(self, s: DualScalar) -> "DualForm":
        return DualForm(self.value * s.value, self.eps * s.value + self.value * s.eps)

    def extend(self, axes: Sequence[int]) -> "DualForm":
        return DualForm(self.value.extend(axes), self.eps.extend(axes))


def dual_wedge(a: DualForm, b: DualForm) -> DualForm:
    return DualForm(wedge(a.value, b.value), wedge(a.value, b.eps) + wedge(a.eps, b.value))


def dual_interior(v: DualVector, a: DualForm) -> DualForm:
    return DualForm(interior(v.value, a.value), interior(v.value, a.eps) + interior(v.eps, a.value))


def _flat(v: Vector) -> Form:
    return Form(v.axes, 1, {(k,): x for k, x in v.items()})


def fibre_closed_form_dual(y: Vector) -> DualForm:
    """Φψ at α = εY to first order in ε, through the closed-form fibre expressions."""
    if y.axes != AXES7:
        raise DeformationError(f"Y must live on e1..e7, got axes {y.axes}")
    alpha = DualVector(Vector.zero(axes=AXES7), y)
    n2 = DualScalar(ZERO)
    for x, dx in zip(alpha.value.comps, alpha.eps.comps):
        n2 = n2 + DualScalar(x, dx) * DualScalar(x, dx)
    r = (DualScalar(ONE) - n2).sqrt()
    c3 = DualForm.const(phi_3form("O"))
    c4 = DualForm.const(dual_phi_4form("O"))
    af = DualForm(_flat(alpha.value), _flat(alpha.eps))
    two = DualScalar(as_scalar(2))
    c_psi = (c3.scale(DualScalar(ONE) - two * n2)
             + dual_wedge(af, dual_interior(alpha, c3)).scale(two)
             - dual_interior(alpha, c4).scale(two * r))
    star_psi = (c4 - dual_wedge(af, dual_interior(alpha, c4)).scale(two)
                + dual_wedge(af, c3).scale(two * r))
    e0 = DualForm.const(e(0))
    return dual_wedge(e0, c_psi.extend(AXES8)) - star_psi.extend(AXES8)


# =========================
# Riemannian fibre
# =========================

def riemannian_fibre_tangent(y: Vector, phi: Form) -> Form:
    """δΦ = e0∧(Y⌟Φ) - Y∧(e0⌟Φ), Y ∈ R^7 read in the standard metric."""
    if y.axes == AXES7:
        y = Vector(AXES8, (ZERO,) + y.comps)
    if y.axes != AXES8 or not y.comps[0].is_zero():
        raise DeformationError("Y must be an imaginary direction e1..e7")
    e0 = Vector.basis(0)
    return wedge(e(0), interior(y, phi)) - wedge(_flat(y), interior(e0, phi))


def riemannian_tangent_rank(phi: Form) -> int:
    cols = [riemannian_fibre_tangent(Vector.basis(k, axes=AXES7), phi).coordinates() for k in AXES7]
    return rank(cols)


# =========================
# Lorentzian fibre
# =========================

def _octonion_vector(v: Optional[Sequence[ScalarLike]]) -> Tuple[Scalar, ...]:
    if v is None:
        return (ZERO,) * 8
    comps = tuple(as_scalar(x) for x in v)
    if len(comps) == 6:
        out = [ZERO] * 8
        for slot, x in zip(VECTOR_SLOTS, comps):
            out[slot] = x
        comps = tuple(out)
    if len(comps) != 8:
        raise DeformationError(f"ξ⃗ / η⃗ need 6 (or 8) components, got {len(comps)}")
    if not (comps[0].is_zero() and comps[4].is_zero()):
        raise DeformationError("ξ⃗ / η⃗ must lie in span(ẽ1, ẽ2, ẽ3, ẽ5, ẽ6, ẽ7)")
    if any(not x.is_real() for x in comps):
        raise DeformationError("ξ⃗ / η⃗ must be real")
    return comps


@dataclass(frozen=True)
class FibrePerturbation:
    """δψ+ = a(𝕀 + ẽ4) + ξ⃗,  δψ- = b(𝕀 - ẽ4) + η⃗ with a + b = 0."""
    a: Scalar = ZERO
    xi: Tuple[Scalar, ...] = field(default_factory=lambda: (ZERO,) * 8)
    eta: Tuple[Scalar, ...] = field(default_factory=lambda: (ZERO,) * 8)
    b: Optional[Scalar] = None

    def __post_init__(self) -> None:
        a = as_scalar(self.a)
        b = -a if self.b is None else as_scalar(self.b)
        if not a.is_real() or not b.is_real():
            raise DeformationError("a, b must be real")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "xi", _octonion_vector(self.xi))
        object.__setattr__(self, "eta", _octonion_vector(self.eta))
        plus, minus = psi_pm(1), psi_pm(-1)
        dp, dm = self.delta_plus(), self.delta_minus()
        if not spinor_pairing(plus, dp).is_zero() or not spinor_pairing(minus, dm).is_zero():
            raise DeformationError("δψ± must keep ψ± null to first order")
        if not (spinor_pairing(plus, dm) + spinor_pairing(dp, minus)).is_zero():
            raise DeformationError(f"⟨ψ+, ψ-⟩ = 1/2 needs a + b = 0, got a = {a}, b = {b}")

    def delta_plus(self) -> Spinor:
        comps = list(self.xi)
        comps[0] = comps[0] + self.a
        comps[4] = comps[4] + self.a
        return Spinor.plus(comps, "4,4")

    def delta_minus(self) -> Spinor:
        comps = list(self.eta)
        comps[0] = comps[0] + self.b  # type: ignore[operator]
        comps[4] = comps[4] - self.b  # type: ignore[operator]
        return Spinor.plus(comps, "4,4")

    def spinor(self) -> Spinor:
        """δψ = ((1+i)/√2) δψ+ + ((1-i)/√2) δψ-."""
        return self.delta_plus() * LORENTZ_U + self.delta_minus() * LORENTZ_U.conj()


def basis_perturbations() -> List[FibrePerturbation]:
    """The 13 coordinate directions: a, then ξ⃗ and η⃗ over ẽ1, ẽ2, ẽ3, ẽ5, ẽ6, ẽ7."""
    out = [FibrePerturbation(a=ONE)]
    for k in range(6):
        unit = [ZERO] * 6
        unit[k] = ONE
        out.append(FibrePerturbation(xi=tuple(unit)))
    for k in range(6):
        unit = [ZERO] * 6
        unit[k] = ONE
        out.append(FibrePerturbation(eta=tuple(unit)))
    return out


# -----------------------------
# K-eigenspace building blocks
# -----------------------------

def para_complex_K() -> Endomorphism:
    """K = e4⊗(e0)* + e0⊗(e4)* + e1⊗(e5)* + e5⊗(e1)* + e2⊗(e6)* + e6⊗(e2)* + e3⊗(e7)* + e7⊗(e3)*."""
    rows = [[ZERO] * 8 for _ in range(8)]
    for k in range(4):
        rows[k][k + 4] = ONE
        rows[k + 4][k] = ONE
    return Endomorphism.from_rows(rows)


def _pair_form(k: int, sign: int) -> Form:
    return one_form({k: 1, k + 4: sign})


def omega_3(sign: int) -> Form:
    """ω± = (e1 ± e5)(e2 ± e6)(e3 ± e7)."""
    return wedge_all(*(_pair_form(k, sign) for k in (1, 2, 3)))


@dataclass(frozen=True)
class EigenParts:
    """Ξ = ξ10(𝕀+ẽ4) + Σ ξ10^k(ẽk+ẽk+4) + ξ01(𝕀-ẽ4) + Σ ξ01^k(ẽk-ẽk+4)."""
    s10: Scalar
    v10: Tuple[Scalar, Scalar, Scalar]
    s01: Scalar
    v01: Tuple[Scalar, Scalar, Scalar]

    @classmethod
    def of(cls, comps: Sequence[Scalar]) -> "EigenParts":
        c = list(comps)
        return cls(
            (c[0] + c[4]) * HALF,
            tuple((c[k] + c[k + 4]) * HALF for k in (1, 2, 3)),  # type: ignore[arg-type]
            (c[0] - c[4]) * HALF,
            tuple((c[k] - c[k + 4]) * HALF for k in (1, 2, 3)),  # type: ignore[arg-type]
        )

    def part(self, which: str) -> "EigenParts":
        if which == "10":
            return EigenParts(self.s10, self.v10, ZERO, (ZERO, ZERO, ZERO))
        return EigenParts(ZERO, (ZERO, ZERO, ZERO), self.s01, self.v01)

    def is_10(self) -> bool:
        return self.s01.is_zero() and all(x.is_zero() for x in self.v01)

    def is_01(self) -> bool:
        return self.s10.is_zero() and all(x.is_zero() for x in self.v10)


def _cyclic_pairs(v: Sequence[Scalar], sign: int) -> Form:
    """v¹(e2±e6)(e3±e7) + v²(e3±e7)(e1±e5) + v³(e1±e5)(e2±e6)."""
    out = Form.zero(2)
    for x, (p, q) in zip(v, ((2, 3), (3, 1), (1, 2))):
        out = out + wedge(_pair_form(p, sign), _pair_form(q, sign)) * x
    return out


def contract_omega_plus(v10: Sequence[Scalar]) -> Form:
    return _cyclic_pairs(v10, 1)


def contract_omega_minus(v01: Sequence[Scalar]) -> Form:
    return _cyclic_pairs(v01, -1)


def contract_omega_01(v01: Sequence[Scalar]) -> Form:
    """ξ⃗01⌟ω = Σ (e_k + e_k+4) ξ01^k."""
    out = Form.zero(1)
    for k, x in zip((1, 2, 3), v01):
        out = out + _pair_form(k, 1) * x
    return out


def contract_omega_10(v10: Sequence[Scalar]) -> Form:
    """ξ⃗10⌟ω = Σ (e_k - e_k+4) ξ10^k."""
    out = Form.zero(1)
    for k, x in zip((1, 2, 3), v10):
        out = out + _pair_form(k, -1) * x
    return out


@dataclass(frozen=True)
class BuildingBlocks:
    Omega_plus: Form
    Omega_minus: Form
    omega_r: Form

    @property
    def half_ww(self) -> Form:
        return wedge(self.omega_r, self.omega_r) * HALF

    def f20(self, p: EigenParts) -> Form:
        """ω_r ∧ (ξ⃗10⌟ω+ + (e4+e0)∧ξ⃗01⌟ω)."""
        inner = contract_omega_plus(p.v10) + wedge(_pair_form(0, 1), contract_omega_01(p.v01))
        return wedge(self.omega_r, inner)

    def f02(self, p: EigenParts) -> Form:
        """ω_r ∧ (ξ⃗01⌟ω- + (e4-e0)∧ξ⃗10⌟ω)."""
        inner = contract_omega_minus(p.v01) - wedge(_pair_form(0, -1), contract_omega_10(p.v10))
        return wedge(self.omega_r, inner)


def building_blocks() -> BuildingBlocks:
    data = structure_from_real_pair(psi_pm(1), psi_pm(-1))
    return BuildingBlocks(data.Omega_plus, data.Omega_minus, data.omega_r)


def _e4_minus_e0() -> Form:
    return one_form({4: 1, 0: -1})


def eigenspace_closed_form(sign: int, p: EigenParts, blocks: BuildingBlocks) -> Form:
    """Closed form of ⟨ψ±, Γ̃Γ̃Γ̃Γ̃ Ξ⟩ for Ξ inside one K-eigenspace."""
    w = blocks.omega_r
    if p.is_10():
        if sign > 0:
            return blocks.Omega_plus * p.s10 + wedge(w, contract_omega_plus(p.v10))
        return blocks.half_ww * p.s10 + wedge_all(w, _e4_minus_e0(), contract_omega_10(p.v10))
    if sign > 0:
        return blocks.half_ww * p.s01 + wedge_all(w, _pair_form(0, 1), contract_omega_01(p.v01))
    return blocks.Omega_minus * p.s01 + wedge(w, contract_omega_minus(p.v01))


def eigenspace_bilinears(sign: int, xi: Spinor, blocks: Optional[BuildingBlocks] = None) -> IdentityCheck:
    """⟨ψ±, Γ̃Γ̃Γ̃Γ̃ Ξ⟩ computed directly and from the eigenspace closed forms."""
    blocks = building_blocks() if blocks is None else blocks
    if xi.signature != "4,4" or xi.parity not in ("plus", "zero"):
        raise DeformationError("Ξ must be a plus spinor of the split model")
    p = EigenParts.of(xi.comps[:8])
    if not (p.is_10() or p.is_01()):
        raise DeformationError("Ξ is not inside a single K-eigenspace")
    direct = bilinear_k(4, psi_pm(sign), xi)
    label = f"res-{'+' if sign > 0 else '-'}-{'10' if p.is_10() else '01'}"
    return IdentityCheck(label, direct, eigenspace_closed_form(sign, p, blocks))


@dataclass(frozen=True)
class LorentzianTangent:
    perturbation: FibrePerturbation
    bilinear: Form     # 2δΦ_c = ⟨ψ_L, Γ̃Γ̃Γ̃Γ̃ δψ⟩
    closed: Form


def lorentzian_closed_form(p: FibrePerturbation, blocks: Optional[BuildingBlocks] = None) -> Form:
    """
    2δΦ_c = i a(Ω+ + Ω-)
          + i(F20(ξ) - F02(η)) + (F20(η) + F02(ξ)).
    """
    blocks = building_blocks() if blocks is None else blocks
    xi, eta = EigenParts.of(p.xi), EigenParts.of(p.eta)
    scalar = (blocks.Omega_plus + blocks.Omega_minus) * (I * p.a)
    im = blocks.f20(xi) - blocks.f02(eta)
    re = blocks.f20(eta) + blocks.f02(xi)
    return scalar + im * I + re


def lorentzian_fibre_tangent(p: FibrePerturbation, blocks: Optional[BuildingBlocks] = None) -> LorentzianTangent:
    blocks = building_blocks() if blocks is None else blocks
    bil = bilinear_k(4, psi_L(), p.spinor())
    closed = lorentzian_closed_form(p, blocks)
    if not bil == closed:
        diff = (bil - closed).terms()[0]
        raise DeformationError(f"bilinear and closed-form 2δΦ_c differ at e{''.join(map(str, diff[0]))}")
    return LorentzianTangent(p, bil, closed)


def _real_row(a: Form) -> List[Scalar]:
    coords = a.coordinates()
    return [x.real() for x in coords] + [x.imag() for x in coords]


def tangent_rank(forms: Sequence[Form]) -> int:
    """Real rank of a family of complex 4-forms."""
    return rank([_real_row(f) for f in forms]) if forms else 0


# =========================
# K leg-type decomposition
# =========================

def _eigen_change(k_map: Endomorphism) -> Tuple[Endomorphism, Endomorphism]:
    """(A, B): e^i = Σ A[i][j] f^j and f^j = Σ B[j][m] e^m, f^0..3 in the +1 and f^4..7 in the -1 eigenspace."""
    m = k_map.matrix
    if not (k_map @ k_map) == Endomorphism.identity():
        raise DeformationError("K must square to the identity")
    kt = [[m[j][i] for j in range(8)] for i in range(8)]
    plus = nullspace([[x - (ONE if r == c else ZERO) for c, x in enumerate(row)] for r, row in enumerate(kt)], 8)
    minus = nullspace([[x + (ONE if r == c else ZERO) for c, x in enumerate(row)] for r, row in enumerate(kt)], 8)
    if len(plus) != 4 or len(minus) != 4:
        raise DeformationError(f"K eigenspaces have dims {len(plus)}/{len(minus)}, expected 4/4")
    b = plus + minus
    try:
        a = inverse(b)
    except LinAlgError as ex:
        raise DeformationError("K eigen-covectors do not form a basis") from ex
    return Endomorphism.from_rows(a), Endomorphism.from_rows(b)


def leg_types(a: Form, k_map: Optional[Endomorphism] = None) -> Dict[Tuple[int, int], Form]:
    """Split a form by the number (p, q) of legs in the ±1 eigenspaces of K."""
    to_f, to_e = _eigen_change(para_complex_K() if k_map is None else k_map)
    in_f = pullback(a, to_f)
    buckets: Dict[Tuple[int, int], Dict] = {}
    for idx, val in in_f.coeffs.items():
        p = sum(1 for x in idx if x < 4)
        buckets.setdefault((p, a.grade - p), {})[idx] = val
    return {pq: pullback(Form(AXES8, a.grade, terms), to_e) for pq, terms in sorted(buckets.items())}


@dataclass(frozen=True)
class BigradedDecomposition:
    """δΦ = Re20 + Re02 + i(Im20 + Im02 + c(Ω+ + Ω-)); 20 / 02 are the (3,1) / (1,3) leg types."""
    re20: Form
    re02: Form
    im20: Form
    im02: Form
    im_scalar: Scalar
    Omega_sum: Form

    def total(self) -> Form:
        return self.re20 + self.re02 + (self.im20 + self.im02 + self.Omega_sum * self.im_scalar) * I


def decompose_wrt_K(delta: Form, k_map: Optional[Endomorphism] = None,
                    blocks: Optional[BuildingBlocks] = None) -> BigradedDecomposition:
    blocks = building_blocks() if blocks is None else blocks
    zero = Form.zero(4)
    re_parts = leg_types(delta.real(), k_map)
    im_parts = leg_types(delta.imag(), k_map)
    for pq in re_parts:
        if pq not in ((3, 1), (1, 3)):
            raise DeformationError(f"real part has a ({pq[0]},{pq[1]}) component outside Λ2,0 ⊕ Λ0,2")
    for pq in im_parts:
        if pq not in ((3, 1), (1, 3), (4, 0), (0, 4)):
            raise DeformationError(f"imaginary part has a ({pq[0]},{pq[1]}) component")
    omega_sum = blocks.Omega_plus + blocks.Omega_minus
    top = im_parts.get((4, 0), zero) + im_parts.get((0, 4), zero)
    c = span_coefficients(top.coordinates(), [omega_sum.coordinates()])
    if c is None:
        raise DeformationError("(4,0) ⊕ (0,4) part of Im δΦ is not a multiple of Ω+ + Ω-")
    out = BigradedDecomposition(
        re20=re_parts.get((3, 1), zero),
        re02=re_parts.get((1, 3), zero),
        im20=im_parts.get((3, 1), zero),
        im02=im_parts.get((1, 3), zero),
        im_scalar=c[0],
        Omega_sum=omega_sum,
    )
    if not out.total() == delta:
        raise DeformationError("bigraded components do not re-sum to δΦ")
    return out


@dataclass(frozen=True)
class DecompositionSummary:
    re_dim: int
    im_dim: int
    total_dim: int
    bijective: bool


def decomposition_summary(perturbations: Optional[Sequence[FibrePerturbation]] = None) -> DecompositionSummary:
    """
    Real dimensions of Re / Im over the sweep, and the matched bijection
    Re20(0, v) = Im20(v, 0), Re02(v, 0) = -Im02(0, v) between the two copies.
    """
    blocks = building_blocks()
    perts = basis_perturbations() if perturbations is None else list(perturbations)
    tangents = [lorentzian_fibre_tangent(p, blocks).bilinear for p in perts]
    parts = [decompose_wrt_K(t, blocks=blocks) for t in tangents]
    re_dim = rank([f.real().coordinates() for f in tangents])
    im_dim = rank([f.imag().coordinates() for f in tangents])
    total = tangent_rank(tangents)

    bijective = True
    images20, images02 = [], []
    for k in range(6):
        unit = [ZERO] * 6
        unit[k] = ONE
        d_xi = decompose_wrt_K(lorentzian_fibre_tangent(FibrePerturbation(xi=tuple(unit)), blocks).bilinear, blocks=blocks)
        d_eta = decompose_wrt_K(lorentzian_fibre_tangent(FibrePerturbation(eta=tuple(unit)), blocks).bilinear, blocks=blocks)
        bijective &= d_eta.re20 == d_xi.im20 and d_xi.re02 == -d_eta.im02
        images20.append(d_xi.im20.coordinates())
        images02.append(d_eta.im02.coordinates())
    bijective &= rank(images20) == 6 and rank(images02) == 6
    logger.debug("decomposition_summary: re=%d im=%d total=%d parts=%d", re_dim, im_dim, total, len(parts))
    return DecompositionSummary(re_dim, im_dim, total, bijective)


# =========================
# transversality / sl(4)^⊥
# =========================

def first_order_compat(phi: Form, delta: Form) -> List[List[Scalar]]:
    """ε-coefficient of the wedge-Gram matrix of Φ + εδΦ, Φ part projected out."""
    axes = phi.axes
    basis = {a: Vector.basis(a, axes=axes) for a in axes}
    pairs = index_subsets(axes, 2)
    p0 = [interior(basis[i], interior(basis[j], phi)) for i, j in pairs]
    p1 = [interior(basis[i], interior(basis[j], delta)) for i, j in pairs]
    n = len(pairs)
    out = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            val = (wedge_all(p1[a], p0[b], phi) + wedge_all(p0[a], p1[b], phi)
                   + wedge_all(p0[a], p0[b], delta)).top_coefficient() / 6
            out[a][b] = val
            out[b][a] = val
    return drop_totally_antisymmetric(out, axes)


def is_metric_preserving(phi: Form, delta: Form) -> bool:
    return all(x.is_zero() for row in first_order_compat(phi, delta) for x in row)


def spin_orbit_intersection(phi: Optional[Form] = None,
                            tangents: Optional[Sequence[Form]] = None) -> int:
    """dim (span{A·Φ_L : A ∈ spin(4,4)} ∩ fibre tangent space) over R."""
    phi = build_family("lorentzian").form if phi is None else phi
    if tangents is None:
        blocks = building_blocks()
        tangents = [lorentzian_fibre_tangent(p, blocks).bilinear for p in basis_perturbations()]
    orbit = [_real_row(lie_act(g.vector, phi)) for g in spin_generators("4,4")]
    fibre = [_real_row(t) for t in tangents]
    dim = intersection_dim(orbit, fibre)
    logger.debug("spin_orbit_intersection: orbit=%d fibre=%d common=%d", rank(orbit), rank(fibre), dim)
    return dim


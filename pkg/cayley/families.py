# cayley/families.py
"""
Cayley-form ファミリーの構築と検証。

Every family is Φ = B4(ψ, ψ) for an assembled unit spinor ψ:

  riemannianReal / splitReal          ψ = 𝕀
  riemannianComplexTau / splitComplexTau
                                      ψ = t ψp + t⁻¹ ψ̂p   (t = e^τ ∈ Q₊)
  splitComplexTheta                   ψ = u ψ+ + ū ψ-      (u = e^{iθ}, Gaussian-rational)
  lorentzian                          ψ = (1/√2)(𝕀 + i ẽ4) (θ = π/4)

build_family checks the closed-form expression of each family exactly.
The rest of the module verifies and recovers compatible metrics, evaluates
calibrations, and rebuilds the calibration-adapted Σ identities.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np

from . import config
from .clifford import Spinor, bilinear_k, conjugate_spinor, spinor_pairing
from .core.common import ETA, Index, index_subsets, perm_sign
from .core.exterior import (
    Endomorphism,
    Form,
    MetricError,
    NumericMetric,
    SymBilinear,
    Vector,
    e,
    evaluate,
    hodge,
    interior,
    lie_act,
    numeric_signature,
    volume,
    wedge,
    wedge_all,
)
from .core.linalg import congruence_signature, nullspace, rank, real_rank, span_coefficients, split_real_imag
from .core.scalar import HALF, I, INV_SQRT2, ONE, ZERO, Scalar, ScalarError, ScalarLike, as_scalar, sqrt_real
from .octonion import dual_phi_4form, phi_3form
from .spinors import SpinorError, real_index, structure_from_pure, structure_from_real_pair

logger = logging.getLogger("cayley.families")

AXES8 = tuple(range(8))

FamilyTag = Literal[
    "riemannianReal",
    "riemannianComplexTau",
    "splitReal",
    "splitComplexTau",
    "splitComplexTheta",
    "lorentzian",
]
FAMILY_TAGS: Tuple[str, ...] = (
    "riemannianReal",
    "riemannianComplexTau",
    "splitReal",
    "splitComplexTau",
    "splitComplexTheta",
    "lorentzian",
)
REFERENCE_SIGNATURE: Dict[str, str] = {
    "riemannianReal": "8,0",
    "riemannianComplexTau": "8,0",
    "splitReal": "4,4",
    "splitComplexTau": "4,4",
    "splitComplexTheta": "4,4",
    "lorentzian": "4,4",
}
# dim of the spin stabiliser of the seed spinor
STABILIZER_DIMS: Dict[str, int] = {
    "riemannianReal": 21,
    "riemannianComplexTau": 15,
    "splitReal": 21,
    "splitComplexTau": 15,
    "splitComplexTheta": 15,
    "lorentzian": 15,
}

LORENTZ_U = Scalar(0, Fraction(1, 2), 0, Fraction(1, 2))  # (1 + i)/√2


class FamilyError(RuntimeError):
    """Family parameter is not a rational point, or a seed fails its normalisation."""


class CalibrationError(RuntimeError):
    """Calibration plane is degenerate, or its orthonormal basis leaves the scalar field."""


# =========================
# seeds
# =========================

def _plus(entries: Dict[int, ScalarLike], signature: str) -> Spinor:
    return Spinor.plus([entries.get(k, ZERO) for k in range(8)], signature)


def psi_p_riemannian() -> Spinor:
    """½(𝕀 + i e4)."""
    return _plus({0: HALF, 4: HALF * I}, "8,0")


def psi_p_split() -> Spinor:
    """½(𝕀 + i ẽ7)."""
    return _plus({0: HALF, 7: HALF * I}, "4,4")


def psi_pm(sign: int) -> Spinor:
    """ψ± = ½(𝕀 ± ẽ4)."""
    return _plus({0: HALF, 4: HALF if sign > 0 else -HALF}, "4,4")


def psi_L() -> Spinor:
    """(1/√2)(𝕀 + i ẽ4) = u ψ+ + ū ψ- at u = (1+i)/√2."""
    return _plus({0: INV_SQRT2, 4: INV_SQRT2 * I}, "4,4")


def mixed_pair() -> Tuple[Spinor, Spinor]:
    """
    Complementary pure spinors of real index two summing to ψ_L:
    ψp  = (1/√2)(½(𝕀 - ẽ3) + (i/2)(ẽ4 + ẽ7)),
    ψp' = (1/√2)(½(𝕀 + ẽ3) + (i/2)(ẽ4 - ẽ7)).
    """
    c = INV_SQRT2 * HALF
    ic = c * I
    p = _plus({0: c, 3: -c, 4: ic, 7: ic}, "4,4")
    p2 = _plus({0: c, 3: c, 4: ic, 7: -ic}, "4,4")
    return p, p2


# =========================
# printed forms
# =========================

def one_form(comps: Dict[int, ScalarLike], axes: Sequence[int] = AXES8) -> Form:
    return Form(tuple(axes), 1, {(a,): as_scalar(c) for a, c in comps.items()})


def _product(*factors: Dict[int, ScalarLike]) -> Form:
    return wedge_all(*(one_form(f) for f in factors))


def octonion_cayley_form(algebra: str = "O") -> Form:
    """e0∧φ - *φ from the structure 3-form and its dual."""
    phi = phi_3form(algebra).extend(AXES8)
    star = dual_phi_4form(algebra).extend(AXES8)
    return wedge(e(0), phi) - star


def printed_omega(signature: str) -> Form:
    if signature == "8,0":
        return e(1, 5) + e(2, 6) + e(3, 7) + e(4, 0)
    return e(1, 2) + e(3, 4) + e(5, 6) + e(7, 0)


def printed_Omega(signature: str) -> Form:
    if signature == "8,0":
        return _product({4: 1, 0: I}, {1: 1, 5: I}, {2: 1, 6: I}, {3: 1, 7: I})
    return _product({7: 1, 0: I}, {1: 1, 2: -I}, {3: 1, 4: -I}, {5: 1, 6: I})


def printed_Omega_pm(sign: int) -> Form:
    """Ω± = (e4 ± e0)(e1 ± e5)(e2 ± e6)(e3 ± e7)."""
    s = 1 if sign > 0 else -1
    return _product({4: 1, 0: s}, {1: 1, 5: s}, {2: 1, 6: s}, {3: 1, 7: s})


def printed_omega_r() -> Form:
    return e(1, 5) + e(2, 6) + e(3, 7) + e(4, 0)


def printed_mixed() -> Dict[str, Form]:
    return {
        "Omega_c": _product({0: 1, 7: -I}, {3: I, 4: 1}, {1: 1, 6: 1}, {2: 1, 5: -1}),
        "Omega_c_prime": _product({0: 1, 7: I}, {3: I, 4: -1}, {1: 1, 6: -1}, {2: 1, 5: 1}),
        "omega_c": e(6, 1) + e(2, 5) + e(3, 4, coeff=I) - e(0, 7, coeff=I),
    }


def lorentzian_blocks() -> Tuple[Form, Form]:
    """
    φ_L  = e123 - e1(ie45 - e67) - e2(ie46 - e75) - e3(ie47 - e56),
    *φ_L = ie4567 + e23(ie45 - e67) + e31(ie46 - e75) + e12(ie47 - e56)
    on the imaginary axes 1..7.
    """
    def sd(a: int, b: int, c: int, d: int) -> Form:
        return e(a, b, dim=7, coeff=I) - e(c, d, dim=7)

    s1, s2, s3 = sd(4, 5, 6, 7), sd(4, 6, 7, 5), sd(4, 7, 5, 6)
    phi = (e(1, 2, 3, dim=7) - wedge(e(1, dim=7), s1)
           - wedge(e(2, dim=7), s2) - wedge(e(3, dim=7), s3))
    star = (e(4, 5, 6, 7, dim=7, coeff=I) + wedge(e(2, 3, dim=7), s1)
            + wedge(e(3, 1, dim=7), s2) + wedge(e(1, 2, dim=7), s3))
    return phi, star


def lorentzian_block_form() -> Form:
    """Φ_L = i e0∧φ_L + *φ_L."""
    phi, star = lorentzian_blocks()
    return wedge(e(0), phi.extend(AXES8)) * I + star.extend(AXES8)


# =========================
# family construction
# =========================

@dataclass(frozen=True)
class CayleyForm:
    tag: str
    form: Form
    parameter: Optional[Scalar]
    seed: Spinor
    closed_form: Form
    parts: Dict[str, Form] = field(default_factory=dict)

    @property
    def signature(self) -> str:
        return REFERENCE_SIGNATURE[self.tag]

    @property
    def reference_metric(self) -> SymBilinear:
        return SymBilinear.diagonal(ETA[self.signature])

    @property
    def is_real(self) -> bool:
        return self.form.is_real()


def cosh2(t: Scalar) -> Scalar:
    """cosh 2τ = (t² + t⁻²)/2 for t = e^τ."""
    return (t * t + (t * t).inv()) * HALF


def sinh2(t: Scalar) -> Scalar:
    return (t * t - (t * t).inv()) * HALF


def _check_t(parameter: Optional[ScalarLike]) -> Scalar:
    t = as_scalar(2 if parameter is None else parameter)
    if not t.is_rational() or t.a <= 0:
        raise FamilyError(f"τ-family parameter t = e^τ must be a positive rational, got {t}")
    return t


def _check_u(parameter: Optional[ScalarLike]) -> Scalar:
    u = as_scalar(parameter) if parameter is not None else Scalar(Fraction(3, 5), 0, Fraction(4, 5))
    if u.b or u.d:
        raise FamilyError(f"θ-family parameter u = e^iθ must be Gaussian-rational, got {u}")
    if not u.norm2() == 1:
        raise FamilyError(f"θ-family parameter must satisfy |u| = 1, got |u|² = {u.norm2()}")
    return u


def _pure_seed(seeds: Optional[Sequence[Spinor]], default: Spinor) -> Spinor:
    if not seeds:
        return default
    if len(seeds) != 1:
        raise FamilyError(f"expected one pure seed, got {len(seeds)}")
    return seeds[0]


def _real_pair(seeds: Optional[Sequence[Spinor]]) -> Tuple[Spinor, Spinor]:
    if not seeds:
        return psi_pm(1), psi_pm(-1)
    if len(seeds) != 2:
        raise FamilyError(f"expected the pair (ψ+, ψ-), got {len(seeds)} seeds")
    return seeds[0], seeds[1]


def build_family(tag: str, parameter: Optional[ScalarLike] = None,
                 seeds: Optional[Sequence[Spinor]] = None) -> CayleyForm:
    """
    Assemble ψ for the family, compute Φ = B4(ψ, ψ) and check it against
    the family's closed form. FamilyError on a bad parameter or seed.
    """
    if tag not in FAMILY_TAGS:
        raise FamilyError(f"Unknown family tag: {tag}")
    sig = REFERENCE_SIGNATURE[tag]

    try:
        if tag in ("riemannianReal", "riemannianComplexTau", "splitReal", "splitComplexTau"):
            default = psi_p_riemannian() if sig == "8,0" else psi_p_split()
            psi_p = _pure_seed(seeds, default)
            if psi_p.signature != sig:
                raise FamilyError(f"{tag} needs a seed in signature {sig}, got {psi_p.signature}")
            data = structure_from_pure(psi_p)
            if tag.endswith("Real"):
                if parameter is not None and not as_scalar(parameter) == 1:
                    raise FamilyError(f"{tag} has no parameter (t = 1), got {parameter}")
                t = ONE
            else:
                t = _check_t(parameter)
            psi = psi_p * t + conjugate_spinor(psi_p) * t.inv()
            ww = wedge(data.omega, data.omega)
            closed = data.Omega.real() * cosh2(t) - ww * HALF + data.Omega.imag() * (sinh2(t) * I)
            parts = {"omega": data.omega, "Omega": data.Omega}
            param: Optional[Scalar] = None if tag.endswith("Real") else t
        else:
            plus, minus = _real_pair(seeds)
            data_r = structure_from_real_pair(plus, minus)
            if tag == "lorentzian":
                if parameter is not None:
                    raise FamilyError("lorentzian has a fixed parameter u = (1+i)/√2")
                u = LORENTZ_U
                param = None
            else:
                u = _check_u(parameter)
                param = u
            ub = u.conj()
            psi = plus * u + minus * ub
            closed = (data_r.Omega_plus * (u * u * HALF) + data_r.Omega_minus * (ub * ub * HALF)
                      + wedge(data_r.omega_r, data_r.omega_r) * HALF)
            parts = {"Omega_plus": data_r.Omega_plus, "Omega_minus": data_r.Omega_minus,
                     "omega_r": data_r.omega_r}
            if tag == "lorentzian":
                phi_L, star_L = lorentzian_blocks()
                parts.update({"phi_L": phi_L, "star_phi_L": star_L})
    except SpinorError as ex:
        raise FamilyError(f"{tag}: seed normalisation failed: {ex}") from ex

    norm = spinor_pairing(psi, psi)
    if not norm == 1:
        raise FamilyError(f"{tag}: assembled spinor has ⟨ψ, ψ⟩ = {norm}, expected 1")
    phi = bilinear_k(4, psi, psi)
    if not phi == closed:
        raise FamilyError(f"{tag}: B4(ψ, ψ) disagrees with the closed-form expression")
    logger.debug("build_family: %s parameter=%s terms=%d", tag, param, len(phi.coeffs))
    return CayleyForm(tag, phi, param, psi, closed, parts)


# =========================
# identity checks
# =========================

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Form
    rhs: Form

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def witness(self) -> Optional[str]:
        """First differing component, or None."""
        if self.lhs.axes != self.rhs.axes or self.lhs.grade != self.rhs.grade:
            return f"shape mismatch: grade {self.lhs.grade}/{self.rhs.grade} axes {self.lhs.axes}/{self.rhs.axes}"
        diff = self.lhs - self.rhs
        if diff.is_zero():
            return None
        idx, _ = diff.terms()[0]
        return f"e{''.join(map(str, idx))}: {self.lhs[idx]} != {self.rhs[idx]}"


# =========================
# fibre over the standard metric
# =========================

def _as_imaginary(alpha: Vector) -> Vector:
    if alpha.axes == tuple(range(1, 8)):
        return alpha
    if alpha.axes == AXES8:
        if not alpha.comps[0].is_zero():
            raise FamilyError("fibre parameter must be imaginary (no e0 component)")
        return Vector(tuple(range(1, 8)), alpha.comps[1:])
    raise FamilyError(f"fibre parameter must live on e1..e7, got axes {alpha.axes}")


def fibre_root(alpha: Vector, root: Optional[ScalarLike] = None) -> Scalar:
    """Exact √(1 - |α|²); FamilyError unless |α|² < 1 and the root is in the field."""
    a = _as_imaginary(alpha)
    n2 = ZERO
    for x in a.comps:
        if not x.is_real():
            raise FamilyError("fibre parameter must be real")
        n2 = n2 + x * x
    rest = ONE - n2
    if rest.sign() <= 0:
        raise FamilyError(f"fibre parameter needs |α|² < 1, got {n2}")
    if root is not None:
        r = as_scalar(root)
        if not (r * r == rest) or r.sign() <= 0:
            raise FamilyError(f"supplied root {r} is not √(1 - |α|²)")
        return r
    try:
        return sqrt_real(rest)
    except ScalarError as ex:
        raise FamilyError(f"√(1 - |α|²) is not exact for |α|² = {n2}") from ex


def fibre_spinor(alpha: Vector, root: Optional[ScalarLike] = None) -> Spinor:
    r = fibre_root(alpha, root)
    return Spinor.plus((r,) + _as_imaginary(alpha).comps, "8,0")


def closed_form_fibre(alpha: Vector, root: Optional[ScalarLike] = None) -> Form:
    """
    e0∧C_ψ - *C_ψ for ψ = √(1-|α|²)𝕀 + α:
      C_ψ  = (1 - 2|α|²)C + 2α∧(α⌟C) - 2√(1-|α|²) α⌟*C
      *C_ψ = *C - 2α∧(α⌟*C) + 2√(1-|α|²) α∧C
    """
    a = _as_imaginary(alpha)
    r = fibre_root(a, root)
    n2 = ONE - r * r
    c3, c4 = phi_3form("O"), dual_phi_4form("O")
    af = Form(a.axes, 1, {(k,): x for k, x in a.items()})
    c_psi = c3 * (1 - 2 * n2) + wedge(af, interior(a, c3)) * 2 - interior(a, c4) * (2 * r)
    star_psi = c4 - wedge(af, interior(a, c4)) * 2 + wedge(af, c3) * (2 * r)
    return wedge(e(0), c_psi.extend(AXES8)) - star_psi.extend(AXES8)


def fibre_family(alphas: Sequence[Vector]) -> List[Form]:
    return [closed_form_fibre(a) for a in alphas]


# =========================
# metric compatibility
# =========================

def _pairs(axes: Sequence[int]) -> List[Index]:
    return index_subsets(axes, 2)


def wedge_gram(phi: Form) -> List[List[Scalar]]:
    """
    W[(ij),(kl)] = (1/6) (e_i⌟e_j⌟Φ)∧(e_k⌟e_l⌟Φ)∧Φ against the standard volume.
    """
    if phi.grade != 4:
        raise MetricError(f"wedge_gram needs a 4-form, got grade {phi.grade}")
    axes = phi.axes
    basis = {a: Vector.basis(a, axes=axes) for a in axes}
    pairs = _pairs(axes)
    contractions = [interior(basis[i], interior(basis[j], phi)) for i, j in pairs]
    with_phi = [wedge(p, phi) for p in contractions]
    n = len(pairs)
    out = [[ZERO] * n for _ in range(n)]
    for p in range(n):
        for q in range(p, n):
            val = wedge(contractions[p], with_phi[q]).top_coefficient() / 6
            out[p][q] = val
            out[q][p] = val
    return out


def drop_totally_antisymmetric(w: Sequence[Sequence[Scalar]], axes: Sequence[int]) -> List[List[Scalar]]:
    """
    W - W_[ijkl]. The wedge-Gram matrix of a Cayley form is a Λ²g + b Φ;
    the 4-form part is the totally antisymmetric one and Λ²g has none.
    """
    pairs = _pairs(axes)
    pos = {p: k for k, p in enumerate(pairs)}

    def entry(a: int, b: int, c: int, d: int) -> Scalar:
        s = 1
        if a > b:
            a, b, s = b, a, -s
        if c > d:
            c, d, s = d, c, -s
        val = w[pos[(a, b)]][pos[(c, d)]]
        return val if s > 0 else -val

    out = [list(row) for row in w]
    for p, (i, j) in enumerate(pairs):
        for q, (k, l) in enumerate(pairs):
            if len({i, j, k, l}) < 4:
                continue
            # (jkl) cyclic: the three even shuffles left after the pair symmetries
            anti = (entry(i, j, k, l) + entry(i, k, l, j) + entry(i, l, j, k)) / 3
            out[p][q] = out[p][q] - anti
    return out


def lambda2_metric(g: SymBilinear) -> List[List[Scalar]]:
    """(Λ²g)[(ij),(kl)] = g_ik g_jl - g_il g_jk."""
    pairs = _pairs(g.axes)
    return [[g[i, k] * g[j, l] - g[i, l] * g[j, k] for k, l in pairs] for i, j in pairs]


@dataclass(frozen=True)
class CompatResult:
    ok: bool
    volume: Optional[Scalar]
    witness: Optional[str] = None


def verify_metric_compat(phi: Form, g: SymBilinear, v: Optional[Form] = None) -> CompatResult:
    """
    Exact check of (1/6) ξ1⌟ξ2⌟Φ ∧ η1⌟η2⌟Φ ∧ Φ = (g(ξ1,η1)g(ξ2,η2) - g(ξ1,η2)g(ξ2,η1)) v
    on all basis pairs, up to the totally antisymmetric part of the left side
    (a multiple of Φ itself, which pairs Λ²₇ with Λ²₂₁). Without v the volume
    coefficient is read off the first nonzero diagonal entry and must satisfy
    v² = |det g|.
    """
    if phi.axes != g.axes:
        return CompatResult(False, None, f"axes mismatch {phi.axes} vs {g.axes}")
    w = drop_totally_antisymmetric(wedge_gram(phi), g.axes)
    lg = lambda2_metric(g)
    pairs = _pairs(g.axes)
    if v is not None:
        vol = v.top_coefficient()
    else:
        first = next((p for p in range(len(pairs)) if not lg[p][p].is_zero()), None)
        if first is None:
            return CompatResult(False, None, "Λ²g has a vanishing diagonal")
        vol = w[first][first] / lg[first][first]
    d = g.det()
    try:
        expected = d.abs()
    except ScalarError:
        return CompatResult(False, vol, f"det g = {d} is not real")
    if not (vol * vol == expected):
        return CompatResult(False, vol, f"v = {vol} is not a volume form of g: v² != |det g| = {expected}")
    for p, (i, j) in enumerate(pairs):
        for q in range(p, len(pairs)):
            if not w[p][q] == lg[p][q] * vol:
                k, l = pairs[q]
                return CompatResult(False, vol, f"(e{i},e{j};e{k},e{l}): {w[p][q]} != {lg[p][q] * vol}")
    return CompatResult(True, vol)


@dataclass(frozen=True)
class RecoveredMetric:
    metric: NumericMetric
    residual: float
    iterations: int
    branch: str
    volume_sign: int


def _antisym_tensor(m: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    n = len(axes)
    pairs = list(combinations(range(n), 2))
    t = np.zeros((n, n, n, n))
    for p, (i, k) in enumerate(pairs):
        for q, (j, l) in enumerate(pairs):
            val = m[p, q]
            t[i, k, j, l] = val
            t[k, i, j, l] = -val
            t[i, k, l, j] = -val
            t[k, i, l, j] = val
    return t


def _lambda2_numeric(g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    pairs = list(combinations(range(n), 2))
    out = np.empty((len(pairs), len(pairs)))
    for p, (i, j) in enumerate(pairs):
        for q, (k, l) in enumerate(pairs):
            out[p, q] = g[i, k] * g[j, l] - g[i, l] * g[j, k]
    return out


def _seed_from_minors(t: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    Algebraic start for the fixed point. t[:, :, k, l] = σ (c_k c_lᵀ - c_l c_kᵀ)
    with c_k the k-th column of g, so the column spaces for (k, l) and (k, m)
    meet in the line of c_k. The pairwise scales then give σ s_k² and σ.
    """
    n = t.shape[0]
    dirs = []
    for k in range(n):
        l, m = (k + 1) % n, (k + 2) % n
        u_l = np.linalg.svd(t[:, :, k, l])[0][:, :2]
        u_m = np.linalg.svd(t[:, :, k, m])[0][:, :2]
        v = np.linalg.svd(np.hstack([u_l, -u_m]))[2][-1]
        d = u_l @ v[:2]
        dirs.append(d / np.linalg.norm(d))

    def scale(k: int, l: int) -> float:
        d = np.outer(dirs[k], dirs[l]) - np.outer(dirs[l], dirs[k])
        return float(np.sum(t[:, :, k, l] * d) / np.sum(d * d))

    q0 = scale(0, 1) * scale(0, 2) / scale(1, 2)
    sigma = 1 if q0 > 0 else -1
    s0 = np.sqrt(abs(q0))
    s = [s0] + [scale(0, l) / (sigma * s0) for l in range(1, n)]
    g = np.column_stack([s[k] * dirs[k] for k in range(n)])
    return 0.5 * (g + g.T), sigma


def recover_metric(phi: Form, max_iters: Optional[int] = None, tol: Optional[float] = None) -> RecoveredMetric:
    """
    Numeric inversion of the compatibility identity.

    With the Φ part of W projected out, M = W / |det W|^{1/42} equals ±Λ²g. The fixed point of
    g ← (1/7) Σ_kl M[(ik),(jl)] (g⁻¹)^{kl} is iterated with damping ½,
    starting from the algebraic minors estimate, then from δ and from the
    split metric for both volume signs.
    The global sign is fixed by g(e0, e0) > 0.
    """
    max_iters = config.CAYLEY_MAX_ITERS if max_iters is None else max_iters
    tol = config.CAYLEY_TOL if tol is None else tol
    axes = phi.axes
    n = len(axes)
    exact = drop_totally_antisymmetric(wedge_gram(phi), axes)
    w = np.array([[x.to_complex() for x in row] for row in exact])
    scale = max(1.0, float(np.max(np.abs(w))))
    if float(np.max(np.abs(w.imag))) > tol * scale:
        raise MetricError("wedge-Gram matrix has an imaginary part: no real compatible metric")
    w = w.real
    sign, logdet = np.linalg.slogdet(w)
    if sign == 0 or not np.isfinite(logdet):
        raise MetricError("wedge-Gram matrix is singular")
    m = w / np.exp(logdet / (n * (n - 1) - 14))
    t = _antisym_tensor(m, axes)
    branches: List[Tuple[str, np.ndarray, int]] = []
    try:
        seed, seed_sigma = _seed_from_minors(t)
        if np.all(np.isfinite(seed)):
            branches.append(("minors", seed, seed_sigma))
    except (np.linalg.LinAlgError, ZeroDivisionError) as ex:
        logger.debug("recover_metric: no algebraic start: %s", ex)
    fallbacks = [("8,0", np.eye(n))]
    if n == 8:
        fallbacks.append(("4,4", np.diag(np.array(ETA["4,4"], dtype=float))))
    branches += [(name, g0, sigma) for name, g0 in fallbacks for sigma in (1, -1)]

    best: Optional[Tuple[float, str]] = None
    for idx, (start_name, g0, sigma) in enumerate(branches):
        g = g0.copy()
        it = 0
        try:
            for it in range(1, max_iters + 1):
                g_new = np.einsum("ikjl,kl->ij", sigma * t, np.linalg.inv(g)) / 7.0
                g_new = 0.5 * (g + 0.5 * (g_new + g_new.T))
                step = float(np.max(np.abs(g_new - g)))
                g = g_new
                if not np.all(np.isfinite(g)):
                    raise np.linalg.LinAlgError("iteration diverged")
                if step < tol * 1e-3:
                    break
        except np.linalg.LinAlgError as ex:
            logger.debug("recover_metric: branch start=%s sigma=%+d failed: %s", start_name, sigma, ex)
            continue
        residual = float(np.max(np.abs(_lambda2_numeric(g) - sigma * m)))
        branch = f"start={start_name} sigma={sigma:+d}"
        logger.debug("recover_metric: %s iterations=%d residual=%.3e", branch, it, residual)
        if residual < tol * max(1.0, float(np.max(np.abs(m)))):
            if idx > 0:
                logger.warning("recover_metric: accepted fallback branch %s", branch)
            if g[0, 0] < 0:
                g = -g
            try:
                sig = numeric_signature(g, tol)
            except MetricError as ex:
                raise MetricError(f"recovered metric is degenerate: {ex}") from ex
            return RecoveredMetric(NumericMetric(axes, g, sig), residual, it, branch, sigma)
        if best is None or residual < best[0]:
            best = (residual, branch)
    raise MetricError(f"no branch converged within {max_iters} iterations (best residual {best})")


# =========================
# calibrations
# =========================

PlaneKind = Literal["riemannian", "split", "lorentzian"]


def _kind_of(p: int, q: int) -> str:
    if (p, q) in ((4, 0), (0, 4)):
        return "riemannian"
    if (p, q) == (2, 2):
        return "split"
    return "lorentzian"


def _gram(vectors: Sequence[Vector], g: SymBilinear) -> List[List[Scalar]]:
    return [[g.pair(u, v) for v in vectors] for u in vectors]


@dataclass(frozen=True)
class CalibrationPlane:
    vectors: Tuple[Vector, ...]
    kind: PlaneKind

    def __post_init__(self) -> None:
        if len(self.vectors) != 4:
            raise CalibrationError(f"calibration plane needs 4 vectors, got {len(self.vectors)}")
        if rank([list(v.comps) for v in self.vectors]) != 4:
            raise CalibrationError("calibration plane vectors are linearly dependent")
        if self.kind not in ("riemannian", "split", "lorentzian"):
            raise CalibrationError(f"Unknown plane kind: {self.kind}")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector], g: SymBilinear) -> "CalibrationPlane":
        p, q, z = congruence_signature(_gram(vectors, g))
        if z:
            raise CalibrationError("metric restricted to the plane is degenerate")
        return cls(tuple(vectors), _kind_of(p, q))

    @classmethod
    def coordinate(cls, labels: Sequence[int], g: SymBilinear) -> "CalibrationPlane":
        return cls.from_vectors([Vector.basis(a, axes=g.axes) for a in labels], g)


def orthonormal_basis(vectors: Sequence[Vector], g: SymBilinear) -> List[Vector]:
    """Exact Gram-Schmidt for an indefinite metric; null directions are mixed away first."""
    pending = list(vectors)
    out: List[Vector] = []
    while pending:
        idx = next((k for k, v in enumerate(pending) if not g.pair(v, v).is_zero()), None)
        if idx is None:
            pair = next(((a, b) for a in range(len(pending)) for b in range(a + 1, len(pending))
                         if not g.pair(pending[a], pending[b]).is_zero()), None)
            if pair is None:
                raise CalibrationError("metric restricted to the plane is degenerate")
            a, b = pair
            pending[a] = pending[a] + pending[b]
            idx = a
        v = pending.pop(idx)
        n = g.pair(v, v)
        try:
            root = sqrt_real(n.abs())
        except ScalarError as ex:
            raise CalibrationError(f"normalising a vector of norm {n} leaves the scalar field") from ex
        u = v * root.inv()
        s = n.sign()
        out.append(u)
        pending = [w - u * (g.pair(u, w) * s) for w in pending]
    return out


@dataclass(frozen=True)
class CalibrationResult:
    value: Scalar
    constant: Optional[Scalar]
    kind: str

    @property
    def calibrated(self) -> bool:
        return self.constant is not None


def calibration_constants(cf: CayleyForm) -> Tuple[Scalar, ...]:
    if cf.tag in ("riemannianReal", "splitReal"):
        return (ONE,)
    if cf.tag in ("riemannianComplexTau", "splitComplexTau"):
        return (cosh2(cf.parameter),)  # type: ignore[arg-type]
    if cf.tag == "lorentzian":
        return (ONE, I)
    raise CalibrationError(f"no calibration constants tabulated for {cf.tag}")


def is_calibrated(cf: CayleyForm, plane: CalibrationPlane, g: Optional[SymBilinear] = None) -> CalibrationResult:
    """Evaluate Φ on an orthonormal basis of the plane and match ± a family constant."""
    g = cf.reference_metric if g is None else g
    actual = CalibrationPlane.from_vectors(plane.vectors, g).kind
    if actual != plane.kind:
        raise CalibrationError(f"plane declared {plane.kind} but the metric restricts as {actual}")
    basis = orthonormal_basis(plane.vectors, g)
    value = evaluate(cf.form, *basis)
    constant = next((c for c in calibration_constants(cf) if value == c or value == -c), None)
    return CalibrationResult(value, constant, actual)


def coordinate_calibrations(cf: CayleyForm, kind: Optional[str] = None) -> List[Tuple[Index, CalibrationResult]]:
    g = cf.reference_metric
    out = []
    for labels in index_subsets(AXES8, 4):
        plane = CalibrationPlane.coordinate(labels, g)
        if kind is not None and plane.kind != kind:
            continue
        res = is_calibrated(cf, plane, g)
        if res.calibrated:
            out.append((labels, res))
    return out


# =========================
# Σ-bases and calibration identities
# =========================

@dataclass(frozen=True)
class SigmaBasis:
    unprimed: Tuple[Form, Form, Form]
    primed: Tuple[Form, Form, Form]
    eta: Tuple[int, int, int]
    plane: Index
    complement: Index


def sigma_basis(kind: str) -> SigmaBasis:
    """Self-dual 2-form bases for H and H⊥ on R^8."""
    if kind in ("riemannian", "split"):
        return SigmaBasis(
            (e(4, 1) - e(2, 3), e(4, 2) - e(3, 1), e(4, 3) - e(1, 2)),
            (e(0, 5) - e(6, 7), e(0, 6) - e(7, 5), e(0, 7) - e(5, 6)),
            (1, 1, 1), (1, 2, 3, 4), (0, 5, 6, 7),
        )
    if kind == "splitSecond":
        return SigmaBasis(
            (e(5, 4) + e(3, 6), e(5, 3) + e(6, 4), e(5, 6) - e(4, 3)),
            (e(0, 1) + e(2, 7), e(0, 2) + e(7, 1), e(0, 7) - e(1, 2)),
            (-1, -1, 1), (3, 4, 5, 6), (0, 1, 2, 7),
        )
    if kind == "lorentzian":
        return SigmaBasis(
            (e(4, 5, coeff=I) - e(6, 7), e(4, 6, coeff=I) - e(7, 5), e(4, 7, coeff=I) - e(5, 6)),
            (e(0, 1, coeff=I) - e(2, 3), e(0, 2, coeff=I) - e(3, 1), e(0, 3, coeff=I) - e(1, 2)),
            (1, 1, 1), (4, 5, 6, 7), (0, 1, 2, 3),
        )
    raise CalibrationError(f"Unknown Σ-basis kind: {kind}")


def sigma_sum(basis: SigmaBasis, cross_sign: int) -> Form:
    """-(1/6)Σ η_i Σ^iΣ^i - (1/6)Σ η_i Σ'^iΣ'^i + cross_sign Σ η_i Σ^iΣ'^i."""
    out = Form.zero(4)
    sixth = Fraction(1, 6)
    for s, a, b in zip(basis.eta, basis.unprimed, basis.primed):
        out = out - wedge(a, a) * (s * sixth) - wedge(b, b) * (s * sixth) + wedge(a, b) * (s * cross_sign)
    return out


_UNPRIMED = {1: 1, 2: 2, 3: 3, 4: 4}
_PRIMED = {1: 5, 2: 6, 3: 7, 4: 0}


def _eps(idx: Sequence[int]) -> int:
    # orientation ε_{4123} = +1
    return -perm_sign(idx)


def tau_adapted_form(t: ScalarLike) -> Form:
    """Φ_τ written in the basis e^I = e1..e4, e'^I = e5, e6, e7, e0."""
    t = _check_t(t)
    c, s = cosh2(t), sinh2(t)
    u, p = _UNPRIMED, _PRIMED
    quarter, sixth, twenty4 = Fraction(1, 4), Fraction(1, 6), Fraction(1, 24)
    out = Form.zero(4)
    for idx in permutations((1, 2, 3, 4)):
        i, j, k, l = idx
        sg = _eps(idx)
        out = out + e(u[i], u[j], u[k], u[l], coeff=c * (sg * twenty4))
        out = out + e(p[i], p[j], p[k], p[l], coeff=c * (sg * twenty4))
        out = out - e(u[i], u[j], p[k], p[l], coeff=c * (sg * quarter))
        out = out + e(p[i], u[j], u[k], u[l], coeff=s * I * (sg * sixth))
        out = out - e(u[i], p[j], p[k], p[l], coeff=s * I * (sg * sixth))
    for i, j, k, l in product((1, 2, 3, 4), repeat=4):
        if i == j or k == l:
            continue
        delta = (1 if (i, j) == (k, l) else 0) - (1 if (i, j) == (l, k) else 0)
        if delta:
            out = out + e(u[i], u[j], p[k], p[l], coeff=Fraction(delta, 4))
    return out


def calibration_identity(tag: str, t: ScalarLike = 2) -> IdentityCheck:
    """Σ-basis expression of a family form against the family form itself."""
    if tag == "riemannian":
        lhs, rhs = sigma_sum(sigma_basis("riemannian"), 1), build_family("riemannianReal").form
    elif tag == "split":
        lhs, rhs = sigma_sum(sigma_basis("split"), -1), build_family("splitReal").form
    elif tag == "splitSecond":
        lhs, rhs = sigma_sum(sigma_basis("splitSecond"), 1), build_family("splitReal").form
    elif tag == "lorentzian":
        lhs, rhs = sigma_sum(sigma_basis("lorentzian"), -1), build_family("lorentzian").form
    elif tag == "tau":
        lhs, rhs = tau_adapted_form(t), build_family("riemannianComplexTau", t).form
    else:
        raise CalibrationError(f"Unknown calibration identity: {tag}")
    return IdentityCheck(f"calibration-{tag}", lhs, rhs)


# =========================
# orbit / stabiliser counts
# =========================

def action_matrix(phi: Form) -> List[List[Scalar]]:
    """Rows: Λ⁴ coordinates; columns: the 64 matrix units of gl(8)."""
    axes = phi.axes
    cols = [lie_act(Endomorphism.unit(a, b, axes=axes), phi).coordinates() for a in axes for b in axes]
    return [list(r) for r in zip(*cols)]


def orbit_dimension(phi: Form) -> int:
    """Real rank of A ↦ A·Φ on gl(8, R)."""
    dim = real_rank(action_matrix(phi))
    logger.debug("orbit_dimension: %d", dim)
    return dim


@dataclass(frozen=True)
class FibreCount:
    tangent_dim: int
    image_rank: int


def fibre_dimension(seed: Spinor, real: Optional[bool] = None) -> FibreCount:
    """
    Real dimension of spinor directions δψ keeping ⟨ψ, ψ⟩ (and, for complex
    seeds, Re⟨ψ̂, ψ⟩) fixed to first order, and the real rank of δψ ↦ B4(ψ, δψ)
    on that space.
    """
    if real is None:
        real = all(x.is_real() for x in seed.comps)
    eta = ETA[seed.signature]
    up = seed.comps[:8]
    nparams = 8 if real else 16

    def spinor_of(x: Sequence[Scalar]) -> Spinor:
        if real:
            return Spinor.plus(list(x), seed.signature)
        return Spinor.plus([x[k] + x[k + 8] * I for k in range(8)], seed.signature)

    def row(coeffs: Sequence[Scalar]) -> List[Scalar]:
        base = [c if s > 0 else -c for s, c in zip(eta, coeffs)]
        return base if real else base + [c * I for c in base]

    rows = split_real_imag([row(up)])
    if not real:
        rows.append([x.real() for x in row([x.conj() for x in up])])
    kernel = nullspace(rows, nparams)
    cols = [bilinear_k(4, seed, spinor_of(x)).coordinates() for x in kernel]
    image = real_rank([list(r) for r in zip(*cols)]) if cols else 0
    logger.debug("fibre_dimension: tangent=%d image=%d", len(kernel), image)
    return FibreCount(len(kernel), image)


# =========================
# further identities
# =========================

@dataclass(frozen=True)
class MixedRepresentation:
    pairing_half: bool
    real_index_two: bool
    sums_to_psi_L: bool
    printed_match: bool
    identity: bool

    @property
    def ok(self) -> bool:
        return all((self.pairing_half, self.real_index_two, self.sums_to_psi_L,
                    self.printed_match, self.identity))


def mixed_representation_check() -> MixedRepresentation:
    """Φ_L = ½(Ω_c + Ω_c') + ½ ω_c∧ω_c from two complementary real-index-two pure spinors."""
    p, p2 = mixed_pair()
    omega_c = bilinear_k(4, p, p) * 2
    omega_c2 = bilinear_k(4, p2, p2) * 2
    small = bilinear_k(2, p2, p) * 2
    printed = printed_mixed()
    phi_L = build_family("lorentzian").form
    return MixedRepresentation(
        pairing_half=spinor_pairing(p2, p) == HALF,
        real_index_two=real_index(p) == 2 and real_index(p2) == 2,
        sums_to_psi_L=(p + p2) == psi_L(),
        printed_match=(omega_c == printed["Omega_c"] and omega_c2 == printed["Omega_c_prime"]
                       and small == printed["omega_c"]),
        identity=phi_L == (omega_c + omega_c2) * HALF + wedge(small, small) * HALF,
    )


@dataclass(frozen=True)
class Lambda2Split:
    orientation: int
    eigen_sign: int
    dim7: int
    dim21: int


def lambda2_7_check(phi: Form) -> Lambda2Split:
    """
    Eigenspaces of ω ↦ *(Φ∧ω) on Λ² for the standard metric, with the
    orientation that makes Φ self-dual: 3 on Λ²_7, -1 on Λ²_21 (or the
    negatives, recorded in eigen_sign).
    """
    g = SymBilinear.delta(8)
    vol = volume()
    if hodge(phi, g, vol) == phi:
        orient = 1
    elif hodge(phi, g, -vol) == phi:
        orient = -1
    else:
        raise FamilyError("Φ is not self-dual for either orientation")
    pairs = _pairs(AXES8)
    cols = [hodge(wedge(phi, e(i, j)), g, vol * orient).coordinates() for i, j in pairs]
    mat = [list(r) for r in zip(*cols)]
    n = len(pairs)

    def eig_dim(lam: int) -> int:
        shifted = [[x - lam if r == c else x for c, x in enumerate(row)] for r, row in enumerate(mat)]
        return len(nullspace(shifted, n))

    for s in (1, -1):
        d7, d21 = eig_dim(3 * s), eig_dim(-s)
        if d7 + d21 == n:
            return Lambda2Split(orient, s, d7, d21)
    raise FamilyError("Λ² does not split into the 3 / -1 eigenspaces")


@dataclass(frozen=True)
class ThetaSymmetry:
    sign_flip_conjugation: bool
    swap_conjugation: bool


def _theta_coefficients(cf: CayleyForm) -> Tuple[Scalar, Scalar]:
    rest = cf.form - wedge(cf.parts["omega_r"], cf.parts["omega_r"]) * HALF
    coeffs = span_coefficients(rest.coordinates(),
                               [cf.parts["Omega_plus"].coordinates(), cf.parts["Omega_minus"].coordinates()])
    if coeffs is None:
        raise FamilyError("Φ_θ - ½ω_r∧ω_r is not in span(Ω+, Ω-)")
    return coeffs[0], coeffs[1]


def phi_theta_symmetry(cf: CayleyForm) -> ThetaSymmetry:
    """
    Ω± → -Ω± followed by complex conjugation maps Φ_θ to Φ_{π/2-θ}
    (Φ_L to itself); exchanging ψ+ ↔ ψ- followed by conjugation fixes Φ_θ.
    """
    if cf.tag not in ("splitComplexTheta", "lorentzian"):
        raise FamilyError(f"phi_theta_symmetry needs a θ-family form, got {cf.tag}")
    a, b = _theta_coefficients(cf)
    half_ww = wedge(cf.parts["omega_r"], cf.parts["omega_r"]) * HALF
    flipped = (half_ww - cf.parts["Omega_plus"] * a - cf.parts["Omega_minus"] * b).conj()
    swap = (psi_pm(-1), psi_pm(1))
    if cf.tag == "lorentzian":
        target = cf.form
        swapped = build_family("lorentzian", seeds=swap).form.conj()
    else:
        target = build_family(cf.tag, I * cf.parameter.conj()).form  # type: ignore[union-attr]
        swapped = build_family(cf.tag, cf.parameter, seeds=swap).form.conj()
    return ThetaSymmetry(flipped == target, swapped == cf.form)

# cayley/suite.py
"""
verify-all のチェック一覧。

Every check returns None on success or a witness string; the report keeps
declaration order. Anchors quote the identity each check re-derives.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import config
from .clifford import Spinor, bilinear_k, clifford_defects, conjugate_spinor, spinor_pairing, stabilizer_dim
from .core.exterior import Endomorphism, Form, SymBilinear, Vector, pullback, wedge
from .core.scalar import HALF, I, ONE, ZERO, Scalar
from .deformations import (
    FibrePerturbation,
    basis_perturbations,
    building_blocks,
    decomposition_summary,
    eigenspace_bilinears,
    fibre_closed_form_dual,
    is_metric_preserving,
    lorentzian_fibre_tangent,
    riemannian_fibre_tangent,
    riemannian_tangent_rank,
    spin_orbit_intersection,
)
from .families import (
    IdentityCheck,
    build_family,
    calibration_identity,
    closed_form_fibre,
    cosh2,
    fibre_dimension,
    fibre_spinor,
    lorentzian_block_form,
    mixed_pair,
    mixed_representation_check,
    octonion_cayley_form,
    orbit_dimension,
    psi_L,
    psi_p_riemannian,
    psi_p_split,
    psi_pm,
    recover_metric,
    sinh2,
    verify_metric_compat,
)
from .formats import parse_form, serialize_form
from .models import CheckRecord, FormDocument, SuiteReport, SuiteSummary
from .octonion import metric_from_3form, phi_3form
from .spinors import annihilator, is_pure, real_index
from .urbantke import reality_check, sigma_triple, urbantke_metric, worked_reduction

logger = logging.getLogger("cayley.suite")

Witness = Optional[str]


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[], Witness]


def _expect(ok: bool, witness: str) -> Witness:
    return None if ok else witness


def _first(*witnesses: Witness) -> Witness:
    return next((w for w in witnesses if w is not None), None)


# =========================
# algebra / families
# =========================

def _clifford(sig: str) -> Witness:
    bad = clifford_defects(sig)
    return _expect(not bad, f"ΓaΓb + ΓbΓa != 2η_ab at {bad[:3]}")


def _cayley_bilinear(sig: str) -> Witness:
    algebra = "O" if sig == "8,0" else "Osplit"
    phi = bilinear_k(4, Spinor.one(sig), Spinor.one(sig))
    w = IdentityCheck("cayley", phi, octonion_cayley_form(algebra)).witness()
    if sig == "8,0":
        w = _first(w, _expect(phi[(1, 2, 3, 4)] == -1, f"Φ[1234] = {phi[(1, 2, 3, 4)]}, expected -1"))
    return w


def _complex_structure() -> Witness:
    cf = build_family("riemannianReal")
    return IdentityCheck("complex-structure", cf.closed_form, octonion_cayley_form("O")).witness()


def _phi_tau() -> Witness:
    t = Scalar(2)
    c, s = cosh2(t), sinh2(t)
    if not (c == Fraction(17, 8) and s == Fraction(15, 8)):
        return f"cosh 2τ = {c}, sinh 2τ = {s} at t = 2"
    cf = build_family("riemannianComplexTau", t)
    om = cf.parts["Omega"]
    half_ww = wedge(cf.parts["omega"], cf.parts["omega"]) * HALF
    expected = om.real() * Fraction(17, 8) - half_ww + om.imag() * (I * Fraction(15, 8))
    return _first(
        IdentityCheck("phi-tau", cf.form, expected).witness(),
        _expect(not cf.form.is_real(), "Φ_τ is real for t = 2"),
    )


def _phi_theta() -> Witness:
    u = Scalar(Fraction(3, 5), 0, Fraction(4, 5))
    if not u * u == Scalar(Fraction(-7, 25), 0, Fraction(24, 25)):
        return f"u² = {u * u}, expected (-7 + 24i)/25"
    cf = build_family("splitComplexTheta", u)
    zero = build_family("splitComplexTheta", 1).form
    right = build_family("splitComplexTheta", I)
    flipped = (wedge(right.parts["omega_r"], right.parts["omega_r"])
               - right.parts["Omega_plus"] - right.parts["Omega_minus"]) * HALF
    return _first(
        IdentityCheck("phi-theta", cf.form, cf.closed_form).witness(),
        _expect(zero.is_real() and zero == build_family("splitReal").form, "θ = 0 is not the real split form"),
        _expect(right.form.is_real() and right.form == flipped, "θ = π/2 is not the sign-flipped real form"),
    )


def _phi_L() -> Witness:
    cf = build_family("lorentzian")
    mixed = mixed_representation_check()
    return _first(
        IdentityCheck("phi-L-block", cf.form, lorentzian_block_form()).witness(),
        _expect(mixed.ok, f"mixed representation failed: {mixed}"),
    )


def _calibration(tag: str) -> Witness:
    return calibration_identity(tag).witness()


# -----------------------------
# metrics
# -----------------------------

COMPAT_CASES = (
    ("cayley-plus", "riemannianReal", None),
    ("phi-split", "splitReal", None),
    ("phi-tau", "riemannianComplexTau", 2),
    ("phi-theta", "splitComplexTheta", None),
    ("phi-L", "lorentzian", None),
)


def _compat(tag: str, parameter) -> Witness:
    cf = build_family(tag, parameter)
    res = verify_metric_compat(cf.form, cf.reference_metric)
    return _expect(res.ok, res.witness or "incompatible")


def _recover(tag: str, parameter) -> Witness:
    cf = build_family(tag, parameter)
    rec = recover_metric(cf.form)
    err = float(np.max(np.abs(rec.metric.matrix - cf.reference_metric.to_array())))
    return _expect(err < 1e-9, f"recovered metric differs by {err:.3e} ({rec.branch})")


def _random_frame(rng: np.random.Generator) -> Endomorphism:
    """L·D·U with unit triangular L, U over {-1, 0, 1} and D over {±1/2, ±1, ±2}: exact and invertible."""
    def tri(lower: bool) -> List[List[Scalar]]:
        return [[ONE if r == c else Scalar(int(rng.integers(-1, 2))) if (c < r if lower else c > r) else ZERO
                 for c in range(8)] for r in range(8)]

    scales = [Fraction(1, 2), Fraction(1), Fraction(2)]
    d = [[Scalar(scales[int(rng.integers(0, 3))] * int(rng.choice([-1, 1]))) if r == c else ZERO
          for c in range(8)] for r in range(8)]
    return Endomorphism.from_rows(tri(True)) @ Endomorphism.from_rows(d) @ Endomorphism.from_rows(tri(False))


def _recover_equivariance() -> Witness:
    rng = np.random.default_rng(config.CAYLEY_SEED)
    for tag in ("riemannianReal", "splitReal"):
        cf = build_family(tag)
        k = 0
        while k < 5:
            a = _random_frame(rng)
            target = cf.reference_metric.transform(a)
            if target[0, 0].is_zero():
                # g(e0, e0) = 0 leaves the global sign convention undefined
                continue
            expected = target.to_array()
            if expected[0, 0] < 0:
                expected = -expected
            rec = recover_metric(pullback(cf.form, a))
            err = float(np.max(np.abs(rec.metric.matrix - expected))) / max(1.0, float(np.max(np.abs(expected))))
            if err > 1e-8:
                return f"{tag} frame change {k}: residual {err:.3e}"
            k += 1
    return None


def _metric7() -> Witness:
    g2 = metric_from_3form(phi_3form("O"))
    split = metric_from_3form(phi_3form("Osplit"))
    delta = SymBilinear.delta(7)
    return _first(
        _expect(g2.metric is not None and g2.metric == delta, f"g(φ) is not δ: {g2.density}"),
        _expect(split.metric is not None and split.metric.is_diagonal()
                and sorted(split.signature) == [3, 4], f"g(φ̃) signature {split.signature}"),
    )


# -----------------------------
# counts
# -----------------------------

def _orbits() -> Witness:
    cases = (("cayley-plus", build_family("riemannianReal").form, 43),
             ("phi-tau", build_family("riemannianComplexTau", 2).form, 49),
             ("phi-L", build_family("lorentzian").form, 49))
    for name, phi, expected in cases:
        got = orbit_dimension(phi)
        if got != expected:
            return f"orbit of {name}: {got}, expected {expected}"
    return None


def _stabilizers() -> Witness:
    cases = (("𝕀 (8,0)", Spinor.one("8,0"), 21),
             ("𝕀 (4,4)", Spinor.one("4,4"), 21),
             ("ψ_τ", build_family("riemannianComplexTau", 2).seed, 15),
             ("ψ_θ", build_family("splitComplexTheta").seed, 15),
             ("ψ_L", psi_L(), 15))
    for name, psi, expected in cases:
        got = stabilizer_dim(psi).dim
        if got != expected:
            return f"stabiliser of {name}: {got}, expected {expected}"
    return None


def _fibres() -> Witness:
    riem = fibre_dimension(Spinor.one("8,0"))
    lor = fibre_dimension(psi_L())
    return _first(
        _expect(riem.image_rank == 7, f"Riemannian fibre {riem}"),
        _expect(lor.image_rank == 13, f"Lorentzian fibre {lor}"),
    )


# -----------------------------
# pure spinors
# -----------------------------

def _pure_corpus() -> Witness:
    p, p2 = mixed_pair()
    corpus = [Spinor.one("8,0"), Spinor.one("4,4"), psi_p_riemannian(), conjugate_spinor(psi_p_riemannian()),
              psi_p_split(), psi_pm(1), psi_pm(-1), p, p2, psi_L(), build_family("riemannianComplexTau", 2).seed]
    for k, psi in enumerate(corpus):
        b0 = spinor_pairing(psi, psi).is_zero()
        dim4 = annihilator(psi).dim == 4
        if not (is_pure(psi) == b0 == dim4):
            return f"corpus[{k}]: pure={is_pure(psi)} B0=0:{b0} dim M=4:{dim4}"
    return None


def _cov(comps: Dict[int, Scalar]) -> List[Scalar]:
    return [comps.get(k, ZERO) for k in range(8)]


def _annihilator_spans() -> Witness:
    riem = [_cov({4: ONE, 0: I}), _cov({1: ONE, 5: I}), _cov({2: ONE, 6: I}), _cov({3: ONE, 7: I})]
    split = [_cov({7: ONE, 0: I}), _cov({1: ONE, 2: -I}), _cov({3: ONE, 4: -I}), _cov({5: ONE, 6: I})]
    return _first(
        _expect(annihilator(psi_p_riemannian()).same_span(riem), "M(½(𝕀 + i e4)) differs from the printed span"),
        _expect(annihilator(psi_p_split()).same_span(split), "M(½(𝕀 + i ẽ7)) differs from the printed span"),
    )


def _real_indices() -> Witness:
    got = (real_index(psi_p_split()), real_index(mixed_pair()[0]), real_index(psi_pm(1)))
    return _expect(got == (0, 2, 4), f"real indices {got}, expected (0, 2, 4)")


# -----------------------------
# Urbantke
# -----------------------------

def _sigma_triple(kind: str, expected) -> Witness:
    res = urbantke_metric(sigma_triple(kind))
    return _expect(res.signature == expected and res.residual < config.CAYLEY_TOL,
                   f"signature {res.signature}, residual {res.residual:.3e}")


def _reality() -> Witness:
    return _first(
        _expect(reality_check(sigma_triple("lorentzian")).ok, "Σ_L violates a reality condition"),
        _expect(not reality_check(sigma_triple("riemannian")).ok, "real Σ passes the reality conditions"),
    )


def _reduction(name: str) -> Witness:
    red = worked_reduction(name)
    return _expect(red.residual < config.CAYLEY_TOL, f"conformal residual {red.residual:.3e}")


# -----------------------------
# fibres / tangent spaces
# -----------------------------

def _eigen_basis() -> List[Spinor]:
    out = []
    for sign in (1, -1):
        for k in range(4):
            comps = [0] * 8
            comps[k] = 1
            comps[k + 4] = sign
            out.append(Spinor.plus(comps, "4,4"))
    return out


def _tangent_eigenspaces() -> Witness:
    blocks = building_blocks()
    for xi in _eigen_basis():
        for sign in (1, -1):
            w = eigenspace_bilinears(sign, xi, blocks).witness()
            if w is not None:
                return f"ψ{'+' if sign > 0 else '-'}, Ξ = {xi}: {w}"
    return None


def _grid() -> List[FibrePerturbation]:
    rng = np.random.default_rng(config.CAYLEY_SEED)
    out = list(basis_perturbations())
    for _ in range(6):
        vals = [Fraction(int(x), int(d)) for x, d in zip(rng.integers(-3, 4, 13), rng.integers(1, 4, 13))]
        out.append(FibrePerturbation(a=vals[0], xi=tuple(vals[1:7]), eta=tuple(vals[7:])))
    return out


def _tangent_scalar() -> Witness:
    blocks = building_blocks()
    for p in _grid():
        lorentzian_fibre_tangent(p, blocks)
    first = lorentzian_fibre_tangent(FibrePerturbation(a=1), blocks).bilinear
    expected = (blocks.Omega_plus + blocks.Omega_minus) * I
    return IdentityCheck("delta-phi-scalar", first, expected).witness()


def _tangent_decomposition() -> Witness:
    s = decomposition_summary()
    return _expect((s.re_dim, s.im_dim, s.total_dim, s.bijective) == (12, 13, 13, True),
                   f"dims Re={s.re_dim} Im={s.im_dim} total={s.total_dim} bijective={s.bijective}")


def _tangent_transverse() -> Witness:
    phi_L = build_family("lorentzian").form
    blocks = building_blocks()
    for k, p in enumerate(basis_perturbations()):
        if not is_metric_preserving(phi_L, lorentzian_fibre_tangent(p, blocks).bilinear):
            return f"direction {k} moves the metric to first order"
    phi = build_family("riemannianReal").form
    for a in range(1, 8):
        if not is_metric_preserving(phi, riemannian_fibre_tangent(Vector.basis(a, axes=range(1, 8)), phi)):
            return f"Riemannian direction e{a} moves the metric to first order"
    return None


def _tangent_orbit() -> Witness:
    dim = spin_orbit_intersection()
    return _expect(dim == 13, f"spin orbit ∩ fibre tangent has dim {dim}, expected 13")


def _fibre_closed_form() -> Witness:
    alpha = Vector.basis(1, axes=range(1, 8)) * Fraction(3, 5)
    psi = fibre_spinor(alpha)
    return IdentityCheck("fibre", closed_form_fibre(alpha), bilinear_k(4, psi, psi)).witness()


def _fibre_first_order() -> Witness:
    y = Vector.basis(1, axes=range(1, 8))
    phi = build_family("riemannianReal").form
    dual = fibre_closed_form_dual(y)
    return _first(
        IdentityCheck("fibre-value", dual.value, phi).witness(),
        IdentityCheck("fibre-first-order", dual.eps, riemannian_fibre_tangent(y * 2, phi)).witness(),
        _expect(riemannian_tangent_rank(phi) == 7, "Y ↦ δΦ does not have rank 7"),
    )


# -----------------------------
# formats
# -----------------------------

def random_form_document(rng: np.random.Generator) -> FormDocument:
    dim = int(rng.choice([4, 7, 8]))
    grade = int(rng.integers(0, dim + 1))
    axes = {4: range(4), 7: range(1, 8), 8: range(8)}[dim]
    terms = []
    for _ in range(int(rng.integers(0, 6))):
        idx = sorted(rng.choice(list(axes), size=grade, replace=False).tolist())
        q = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(4)]
        terms.append((idx, Scalar(*q)))
    return FormDocument.from_form(Form.from_terms(terms, grade, dim=dim))


def _round_trip() -> Witness:
    rng = np.random.default_rng(config.CAYLEY_SEED)
    for k in range(50):
        doc = random_form_document(rng)
        text = serialize_form(doc)
        back = parse_form(text)
        if back != doc or serialize_form(back) != text:
            return f"document {k} does not round-trip:\n{text}"
    return None


# =========================
# registry
# =========================

def checks() -> List[Check]:
    out = [
        Check("clifford-8,0", "the following 16×16 matrices", lambda: _clifford("8,0")),
        Check("clifford-4,4", "generated by 2×2 matrices with octonionic entries", lambda: _clifford("4,4")),
        Check("cayley-plus", "distinct Γ-matrices are inserted", lambda: _cayley_bilinear("8,0")),
        Check("phi-split", "B_k(ψ,φ) := ⟨ψ, Γ…Γ φ⟩", lambda: _cayley_bilinear("4,4")),
        Check("complex-structure", "⟨ψ_p, ΓΓΓΓψ_p⟩ = ½Ω", _complex_structure),
        Check("phi-tau", "ψ_τ := e^τψ_p + e^{−τ}ψ̂_p", _phi_tau),
        Check("phi-theta", "ψ_θ := e^{iθ}ψ₊ + e^{−iθ}ψ₋", _phi_theta),
        Check("phi-L", "an alternative expression for the Lorentzian Cayley form", _phi_L),
    ]
    calibration_anchors = {
        "riemannian": "Φ = −(1/6)ΣΣ − (1/6)Σ′Σ′ + ΣΣ′",
        "split": "the only difference … is the sign in front of the last term",
        "splitSecond": "η_ij = diag(−1,−1,1) is the metric",
        "lorentzian": "Σ_L¹ = ie⁴⁵−e⁶⁷ …",
        "tau": "in a basis adapted to its calibration",
    }
    for tag, anchor in calibration_anchors.items():
        out.append(Check(f"calibration-{tag}", anchor, lambda tag=tag: _calibration(tag)))
    for name, tag, param in COMPAT_CASES:
        out.append(Check(f"compat-{name}",
                         "(1/6) ξ₁⌟ξ₂⌟Φ ∧ η₁⌟η₂⌟Φ ∧ Φ = (g(ξ₁,η₁)g(ξ₂,η₂) − g(ξ₁,η₂)g(ξ₂,η₁)) v_Φ",
                         lambda tag=tag, param=param: _compat(tag, param)))
    for name, tag, param in COMPAT_CASES:
        out.append(Check(f"recover-{name}", "the inner product defined by a Cayley form Φ can be explicitly extracted",
                         lambda tag=tag, param=param: _recover(tag, param)))
    out += [
        Check("recover-equivariance", "the volume form of the metric", _recover_equivariance),
        Check("metric-3form", "there exists an orientation of V and the associated volume form", _metric7),
        Check("orbit-dims", "This is the space of dimension 64−21=43", _orbits),
        Check("stabilizer-dims", "a copy of Spin(7) that stabilises the octonion α₁", _stabilizers),
        Check("fibre-dims", "the expected dimension 6+6+1 for the tangent space", _fibres),
        Check("pure-spinors", "for a pure spinor B₀(φ,φ)=0", _pure_corpus),
        Check("annihilator-spans", "M(ψ) := V⁰_ψ, the subspace of the complexification", _annihilator_spans),
        Check("real-index", "pure spinors of real index two", _real_indices),
        Check("sigma-euclidean", "g_B(ξ,η)v_B = (1/6)ε^{ijk} ξ⌟B^i ∧ η⌟B^j ∧ B^k",
              lambda: _sigma_triple("riemannian", (4, 0))),
        Check("sigma-split", "η_ij = diag(−1,−1,1) is the metric", lambda: _sigma_triple("split", (2, 2))),
        Check("sigma-lorentzian", "Σ_L¹ = ie⁴⁵−e⁶⁷ …", lambda: _sigma_triple("lorentzian", (3, 1))),
        Check("sigma-reality", "B^i ∧ B̄^j = 0 … These are nine reality conditions", _reality),
    ]
    for name in ("cayley-plus", "phi-split", "phi-L"):
        out.append(Check(f"urbantke-reduction-{name}", "we get a triple of 2-forms B^i := σ^i⌟Φ|_{H⊥} on H^⊥",
                         lambda name=name: _reduction(name)))
    out += [
        Check("tangent-eigenspaces", "we list the following results, obtained by explicit computation",
              _tangent_eigenspaces),
        Check("tangent-delta-phi", "2δΦ_c = i a(Ω₊+Ω₋)", _tangent_scalar),
        Check("tangent-decomposition", "Re(S_Φc) = Λ^{2,0} ⊕ Λ^{0,2}, Im(S_Φc) = Λ^{2,0} ⊕ Λ^{0,2} ⊕ ℝ",
              _tangent_decomposition),
        Check("tangent-transverse", "variation of the Cayley form in the remaining tangent directions spanned by",
              _tangent_transverse),
        Check("tangent-sl4-perp", "decomposes into the following irreducible components", _tangent_orbit),
        Check("fibre-closed-form", "gives an explicit description of the 4-forms of the Cayley algebraic type",
              _fibre_closed_form),
        Check("fibre-first-order", "tangent space to the space of such 4-forms", _fibre_first_order),
        Check("format-round-trip", "e^{abc…}=e^a∧e^b∧e^c…", _round_trip),
    ]
    return out



def run_suite(name_filter: Optional[str] = None, timings: bool = False,
              registry: Optional[Sequence[Check]] = None) -> SuiteReport:
    selected = [c for c in (checks() if registry is None else registry)
                if name_filter is None or name_filter in c.name]
    records: List[CheckRecord] = []
    for c in selected:
        start = time.perf_counter()
        try:
            witness = c.run()
        except Exception as ex:  # noqa: BLE001
            witness = f"{type(ex).__name__}: {ex}"
            logger.warning("check %s raised %s", c.name, witness)
        ms = (time.perf_counter() - start) * 1000.0
        status = "pass" if witness is None else "fail"
        logger.info("%-28s %s (%.0f ms)", c.name, status, ms)
        records.append(CheckRecord(name=c.name, anchor=c.anchor, status=status, witness=witness,
                                   ms=round(ms, 1) if timings else None))
    passed = sum(1 for r in records if r.status == "pass")
    summary = SuiteSummary(total=len(records), passed=passed, failed=len(records) - passed)
    return SuiteReport(checks=records, summary=summary)

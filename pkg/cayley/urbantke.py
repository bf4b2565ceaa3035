# cayley/urbantke.py
"""
4 次元 Urbantke 計量と 8→4 次元還元。

The density g̃(ξ, η) v = (1/6) ε^{ijk} ξ⌟B^i ∧ η⌟B^j ∧ B^k is computed exactly
against the coordinate volume of the triple's axes; normalisation and the
self-duality check run on the numpy shadow.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np

from . import config
from .core.common import ETA, Index, perm_sign
from .core.exterior import Form, MetricError, SymBilinear, Vector, hodge, interior, numeric_signature, volume, wedge
from .core.linalg import det
from .core.scalar import I, ONE, ZERO, Scalar, ScalarLike
from .families import AXES8, CalibrationPlane, CayleyForm, build_family, is_calibrated, sigma_basis

logger = logging.getLogger("cayley.urbantke")

TripleMode = Literal["real", "lorentzian"]


class UrbantkeError(RuntimeError):
    """Triple is degenerate, violates the reality conditions or is not self-dual."""


# =========================
# triple
# =========================

@dataclass(frozen=True)
class FormTriple:
    forms: Tuple[Form, Form, Form]
    mode: TripleMode = "real"

    def __post_init__(self) -> None:
        forms = tuple(self.forms)
        if len(forms) != 3:
            raise UrbantkeError(f"triple needs 3 forms, got {len(forms)}")
        axes = forms[0].axes
        for k, b in enumerate(forms, start=1):
            if b.grade != 2 or b.dim != 4:
                raise UrbantkeError(f"B{k} must be a 2-form in dim 4, got grade {b.grade} dim {b.dim}")
            if b.axes != axes:
                raise UrbantkeError(f"B{k} lives on {b.axes}, expected {axes}")
        if self.mode not in ("real", "lorentzian"):
            raise UrbantkeError(f"Unknown triple mode: {self.mode}")
        object.__setattr__(self, "forms", forms)

    @property
    def axes(self) -> Index:
        return self.forms[0].axes

    def wedge_gram(self) -> List[List[Scalar]]:
        return [[wedge(a, b).top_coefficient() for b in self.forms] for a in self.forms]

    def is_nondegenerate(self) -> bool:
        return not det(self.wedge_gram()).is_zero()

    def rotate(self, r: Sequence[Sequence[ScalarLike]]) -> "FormTriple":
        """B'^i = Σ_j R[i][j] B^j."""
        out = []
        for row in r:
            acc = Form.zero(2, axes=self.axes)
            for x, b in zip(row, self.forms):
                acc = acc + b * x
            out.append(acc)
        return FormTriple(tuple(out), self.mode)  # type: ignore[arg-type]

    def scale(self, lam: ScalarLike) -> "FormTriple":
        return FormTriple(tuple(b * lam for b in self.forms), self.mode)  # type: ignore[arg-type]


@dataclass(frozen=True)
class RealityResult:
    ok: bool
    witness: Optional[Tuple[int, int]] = None


def reality_check(t: FormTriple) -> RealityResult:
    """The nine conditions B^i ∧ conj(B^j) = 0; witness is the first failing (i, j), 1-based."""
    for i, a in enumerate(t.forms, start=1):
        for j, b in enumerate(t.forms, start=1):
            if not wedge(a, b.conj()).is_zero():
                return RealityResult(False, (i, j))
    return RealityResult(True)


# =========================
# metric
# =========================

@dataclass(frozen=True)
class UrbantkeMetric:
    density: List[List[Scalar]]
    metric: np.ndarray
    signature: Tuple[int, int]
    duality: complex          # common eigenvalue λ with *B^i = λ B^i
    residual: float


def urbantke_density(t: FormTriple) -> List[List[Scalar]]:
    """Exact g̃_μν against e^{axes}, including the factor i in lorentzian mode."""
    axes = t.axes
    cuts = [[interior(Vector.basis(a, axes=axes), b) for b in t.forms] for a in axes]
    perms = [(p, perm_sign(p)) for p in permutations(range(3))]
    n = len(axes)
    out = [[ZERO] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(mu, n):
            acc = ZERO
            for (i, j, k), s in perms:
                top = wedge(wedge(cuts[mu][i], cuts[nu][j]), t.forms[k]).top_coefficient()
                acc = acc + (top if s > 0 else -top)
            val = acc / 6
            if t.mode == "lorentzian":
                val = val * I
            out[mu][nu] = val
            out[nu][mu] = val
    return out


def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for p in permutations(range(n)):
        eps[p] = perm_sign(p)
    return eps


def _form_matrix(b: Form) -> np.ndarray:
    pos = {a: k for k, a in enumerate(b.axes)}
    m = np.zeros((b.dim, b.dim), dtype=complex)
    for (a, c), v in b.coeffs.items():
        m[pos[a], pos[c]] = v.to_complex()
        m[pos[c], pos[a]] = -v.to_complex()
    return m


def numeric_hodge2(b: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(*B)_ρσ = ½ √|det g| ε_μνρσ B^μν with the coordinate orientation."""
    ginv = np.linalg.inv(g)
    raised = np.einsum("ma,nb,ab->mn", ginv, ginv, b)
    vol = np.sqrt(abs(np.linalg.det(g)))
    return 0.5 * vol * np.einsum("mnrs,mn->rs", _levi_civita(g.shape[0]), raised)


def duality_residual(t: FormTriple, g: np.ndarray) -> Tuple[complex, float]:
    """Best common eigenvalue λ ∈ {±1, ±i} of * on the triple, and its residual."""
    mats = [_form_matrix(b) for b in t.forms]
    stars = [numeric_hodge2(m, g) for m in mats]
    scale = max(1.0, max(float(np.max(np.abs(m))) for m in mats))
    best: Optional[Tuple[complex, float]] = None
    for lam in (1, -1, 1j, -1j):
        res = max(float(np.max(np.abs(s - lam * m))) for s, m in zip(stars, mats)) / scale
        if best is None or res < best[1]:
            best = (lam, res)
    return best  # type: ignore[return-value]


def urbantke_metric(t: FormTriple, tol: Optional[float] = None) -> UrbantkeMetric:
    """
    Urbantke metric of a nondegenerate triple, normalised as g̃/|det g̃|^{1/6}
    and with its global sign fixed so that p ≥ q. UrbantkeError on a degenerate
    triple, a reality violation in lorentzian mode, an imaginary density or a
    triple that is not self-dual for the result.
    """
    tol = config.CAYLEY_TOL if tol is None else tol
    if not t.is_nondegenerate():
        raise UrbantkeError("wedge-Gram matrix of the triple is degenerate")
    if t.mode == "lorentzian":
        real = reality_check(t)
        if not real.ok:
            raise UrbantkeError(f"reality condition B^i∧conj(B^j) = 0 fails at (i, j) = {real.witness}")
    density = urbantke_density(t)
    bad = next(((mu, nu) for mu, row in enumerate(density) for nu, x in enumerate(row) if not x.is_real()), None)
    if bad is not None:
        raise UrbantkeError(f"density has an imaginary part at {bad}: {density[bad[0]][bad[1]]}")
    gt = np.array([[x.to_complex().real for x in row] for row in density])
    d = np.linalg.det(gt)
    if abs(d) < tol:
        raise UrbantkeError(f"Urbantke density is degenerate (det = {d:.3e})")
    g = gt / abs(d) ** (1.0 / 6.0)
    try:
        p, q = numeric_signature(g, tol)
    except MetricError as ex:
        raise UrbantkeError(f"Urbantke metric is degenerate: {ex}") from ex
    if q > p:
        g, (p, q) = -g, (q, p)
    lam, res = duality_residual(t, g)
    logger.debug("urbantke_metric: mode=%s signature=(%d,%d) λ=%s residual=%.3e", t.mode, p, q, lam, res)
    if res > tol:
        raise UrbantkeError(f"triple is not self-dual for its Urbantke metric (residual {res:.3e})")
    return UrbantkeMetric(density, g, (p, q), lam, res)


def conformal_residual(g: np.ndarray, g_ref: np.ndarray) -> float:
    """max |g/|tr(g g_ref⁻¹)| - g_ref/n| over both global signs."""
    n = g_ref.shape[0]
    tr = np.trace(g @ np.linalg.inv(g_ref))
    if abs(tr) < 1e-300:
        return float("inf")
    a = g / abs(tr)
    b = g_ref / n
    return float(min(np.max(np.abs(a - b)), np.max(np.abs(a + b))))


# =========================
# reduction from 8d
# =========================

def _diag_metric(signature: str, axes: Sequence[int]) -> SymBilinear:
    eta = ETA[signature]
    return SymBilinear.diagonal([eta[a] for a in axes], axes)


def raise_bivector(b: Form, g: SymBilinear) -> Form:
    """Bivector dual to a 2-form under a diagonal metric."""
    if not g.is_diagonal():
        raise UrbantkeError("raise_bivector needs a diagonal metric")
    if b.axes != g.axes:
        raise UrbantkeError(f"axes mismatch: {b.axes} vs {g.axes}")
    d = dict(zip(g.axes, g.diag()))
    return Form(b.axes, 2, {(x, y): v * d[x].inv() * d[y].inv() for (x, y), v in b.coeffs.items()})


def lower_bivector(s: Form, g: SymBilinear) -> Form:
    """2-form dual to a bivector under a diagonal metric."""
    if not g.is_diagonal():
        raise UrbantkeError("lower_bivector needs a diagonal metric")
    d = dict(zip(g.axes, g.diag()))
    return Form(s.axes, 2, {(x, y): v * d[x] * d[y] for (x, y), v in s.coeffs.items()})


def contract_bivector(sigma: Form, phi: Form) -> Form:
    """(σ⌟Φ)(x, y) = Σ_{a<b} σ^{ab} Φ(e_a, e_b, x, y)."""
    out = Form.zero(phi.grade - 2, axes=phi.axes)
    for (a, b), s in sigma.coeffs.items():
        ea = Vector.basis(a, axes=phi.axes)
        eb = Vector.basis(b, axes=phi.axes)
        out = out + interior(eb, interior(ea, phi)) * s
    return out


def _self_dual_sign(forms: Sequence[Form], g: SymBilinear) -> Optional[Scalar]:
    vol = volume(axes=g.axes)
    lam_common: Optional[Scalar] = None
    for f in forms:
        star = hodge(f, g, vol)
        lam = next((c for c in (ONE, -ONE, I, -I) if star == f * c), None)
        if lam is None or (lam_common is not None and not lam == lam_common):
            return None
        lam_common = lam
    return lam_common


@dataclass(frozen=True)
class Reduction:
    triple: FormTriple
    metric: UrbantkeMetric
    reference: np.ndarray
    residual: float


def reduce_from_cayley(cf: CayleyForm, plane: Sequence[int], sigma: Sequence[Form],
                       tol: Optional[float] = None) -> Reduction:
    """
    B^i = σ^i⌟Φ restricted to H⊥ for a calibrated coordinate plane H and
    self-dual bivectors σ^i on H; the Urbantke metric of the triple must be
    conformal to the reference metric on H⊥.
    """
    tol = config.CAYLEY_TOL if tol is None else tol
    h = tuple(sorted(plane))
    perp = tuple(a for a in AXES8 if a not in h)
    g = cf.reference_metric
    res = is_calibrated(cf, CalibrationPlane.coordinate(h, g), g)
    if not res.calibrated:
        raise UrbantkeError(f"plane e{''.join(map(str, h))} is not calibrated (Φ = {res.value})")
    g_h = _diag_metric(cf.signature, h)
    if len(sigma) != 3:
        raise UrbantkeError(f"need 3 bivectors on H, got {len(sigma)}")
    lowered = []
    for s in sigma:
        if s.axes != AXES8 or s.grade != 2:
            raise UrbantkeError("σ must be bivectors on the 8d axes")
        lowered.append(lower_bivector(s.restrict(h), g_h))
    if _self_dual_sign(lowered, g_h) is None:
        raise UrbantkeError("σ is not a self-dual basis on H")
    forms = tuple(contract_bivector(s, cf.form).restrict(perp) for s in sigma)
    mode: TripleMode = "real" if all(f.is_real() for f in forms) else "lorentzian"
    triple = FormTriple(forms, mode)  # type: ignore[arg-type]
    metric = urbantke_metric(triple, tol)
    ref = _diag_metric(cf.signature, perp).to_array()
    residual = conformal_residual(metric.metric, ref)
    logger.debug("reduce_from_cayley: %s H=%s residual=%.3e", cf.tag, h, residual)
    if residual > tol:
        raise UrbantkeError(f"Urbantke metric is not conformal to the metric on H⊥ (residual {residual:.3e})")
    return Reduction(triple, metric, ref, residual)


def sigma_bivectors(kind: str) -> Tuple[Form, Form, Form]:
    """Bivectors dual to the Σ-basis on H used by the worked reductions."""
    basis = sigma_basis(kind)
    sig = "8,0" if kind == "riemannian" else "4,4"
    forms = basis.primed if kind == "lorentzian" else basis.unprimed
    g = _diag_metric(sig, AXES8)
    return tuple(raise_bivector(f, g) for f in forms)  # type: ignore[return-value]


# plane H and the family each worked reduction uses
REDUCTION_CASES: Dict[str, Tuple[str, Index, str]] = {
    "cayley-plus": ("riemannianReal", (1, 2, 3, 4), "riemannian"),
    "phi-split": ("splitReal", (3, 4, 5, 6), "splitSecond"),
    "phi-L": ("lorentzian", (0, 1, 2, 3), "lorentzian"),
}


def worked_reduction(name: str) -> Reduction:
    if name not in REDUCTION_CASES:
        raise UrbantkeError(f"Unknown reduction case: {name}")
    tag, plane, kind = REDUCTION_CASES[name]
    return reduce_from_cayley(build_family(tag), plane, sigma_bivectors(kind))


# the split triple is the (-1, -1, 1) basis; sigma_basis("split") is the Euclidean one
# paired with the split cross sign
_TRIPLE_BASIS = {"riemannian": "riemannian", "split": "splitSecond", "lorentzian": "lorentzian"}


def sigma_triple(kind: str) -> FormTriple:
    """Printed Σ-triples moved onto e0..e3 (H⊥ labels in increasing order)."""
    if kind not in _TRIPLE_BASIS:
        raise UrbantkeError(f"Unknown Σ-triple kind: {kind}")
    basis = sigma_basis(_TRIPLE_BASIS[kind])
    axes = basis.plane
    relabel = {a: k for k, a in enumerate(axes)}
    forms = []
    for f in basis.unprimed:
        terms = [((relabel[x], relabel[y]), v) for (x, y), v in f.restrict(axes).coeffs.items()]
        forms.append(Form.from_terms(terms, 2, dim=4))
    mode: TripleMode = "lorentzian" if kind == "lorentzian" else "real"
    return FormTriple(tuple(forms), mode)  # type: ignore[arg-type]


# cayley/spinors.py
"""
純スピノル解析。

Purity (B0 = 0), annihilator (maximal totally null) subspaces, real index,
pairwise intersection type, and the complex / para-complex structures
carried by pure spinors of real index 0 and 4.

Subspaces are compared as covectors (indices lowered with η), which is how
the spans are written down in the literature.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .clifford import Spinor, SpinorError, apply_gamma, bilinear_k, conjugate_spinor, spinor_pairing
from .core.common import ETA
from .core.exterior import Endomorphism, Form, Vector, interior, wedge
from .core.linalg import LinAlgError, inverse, matmul, nullspace, rank, transpose
from .core.scalar import HALF, I, ONE, ZERO, Scalar

logger = logging.getLogger("cayley.spinors")

AXES8 = tuple(range(8))


# =========================
# null subspaces
# =========================

@dataclass(frozen=True)
class NullSubspace:
    """M(ψ) = {v ∈ V⊗C : Γ(v)ψ = 0}."""
    signature: str
    basis: List[Vector]
    real_index: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def covectors(self) -> List[List[Scalar]]:
        eta = ETA[self.signature]
        return [[x if s > 0 else -x for s, x in zip(eta, v.comps)] for v in self.basis]

    def same_span(self, covectors: Sequence[Sequence[Scalar]]) -> bool:
        """True iff the lowered basis spans exactly the given covectors."""
        mine = self.covectors()
        r = rank(mine)
        return r == rank(list(covectors)) == rank(mine + [list(c) for c in covectors])

    def conj(self) -> "NullSubspace":
        return NullSubspace(self.signature, [v.conj() for v in self.basis], self.real_index)


def _gamma_columns(psi: Spinor) -> List[List[Scalar]]:
    """16x8 matrix whose column a is Γa ψ."""
    cols = [apply_gamma(a, psi).comps for a in range(8)]
    return [[cols[a][r] for a in range(8)] for r in range(16)]


def _require_plus(psi: Spinor) -> None:
    if psi.is_zero():
        raise SpinorError("zero spinor")
    if psi.parity != "plus":
        raise SpinorError(f"expected a plus-parity spinor, got {psi.parity}")


def is_pure(psi: Spinor) -> bool:
    """
    In 8d: pure iff B0(ψ, ψ) = 0, cross-checked against dim M(ψ) = 4.
    Raises SpinorError when the two criteria disagree.
    """
    _require_plus(psi)
    by_pairing = spinor_pairing(psi, psi).is_zero()
    dim = annihilator(psi).dim
    if by_pairing != (dim == 4):
        raise SpinorError(f"B0(ψ,ψ) = 0 is {by_pairing} but the annihilator has dimension {dim}")
    return by_pairing


def _real_index(vectors: List[List[Scalar]]) -> int:
    if not vectors:
        return 0
    conj = [[x.conj() for x in v] for v in vectors]
    return rank(vectors) + rank(conj) - rank(vectors + conj)


def annihilator(psi: Spinor) -> NullSubspace:
    _require_plus(psi)
    kernel = nullspace(_gamma_columns(psi), 8)
    basis = [Vector(AXES8, tuple(v)) for v in kernel]
    sub = NullSubspace(psi.signature, basis, _real_index(kernel))
    logger.debug("annihilator: dim=%d real_index=%d", sub.dim, sub.real_index)
    return sub


def real_index(psi: Spinor) -> int:
    if not is_pure(psi):
        raise SpinorError("real index is defined for pure spinors only")
    return annihilator(psi).real_index


def is_totally_null(sub: NullSubspace) -> bool:
    eta = ETA[sub.signature]
    for v in sub.basis:
        for w in sub.basis:
            acc = ZERO
            for s, x, y in zip(eta, v.comps, w.comps):
                acc = acc + (x * y if s > 0 else -(x * y))
            if not acc.is_zero():
                return False
    return True


# =========================
# intersections
# =========================

@dataclass(frozen=True)
class Intersection:
    common: int                 # number of common null directions: 0, 2 or 4
    witness: Optional[Form]     # B2(φ, ψ) when common == 2
    direct: int                 # dim M(φ) ∩ M(ψ) from the kernels


def intersection_type(phi: Spinor, psi: Spinor) -> Intersection:
    for s in (phi, psi):
        if not is_pure(s):
            raise SpinorError("intersection_type needs pure spinors")
    m_phi = [list(v.comps) for v in annihilator(phi).basis]
    m_psi = [list(v.comps) for v in annihilator(psi).basis]
    direct = rank(m_phi) + rank(m_psi) - rank(m_phi + m_psi)
    witness = None
    if not spinor_pairing(phi, psi).is_zero():
        common = 0
    else:
        b2 = bilinear_k(2, phi, psi)
        if b2.is_zero():
            common = 4
        else:
            if not wedge(b2, b2).is_zero():
                raise SpinorError("B2 of pure spinors is not decomposable")
            common, witness = 2, b2
    if common != direct:
        raise SpinorError(f"bilinear intersection count {common} disagrees with kernel intersection {direct}")
    return Intersection(common, witness, direct)


# =========================
# structures
# =========================

@dataclass(frozen=True)
class ComplexStructureData:
    J: Endomorphism
    omega: Form
    Omega: Form
    eplus: NullSubspace


@dataclass(frozen=True)
class ParaComplexStructureData:
    K: Endomorphism
    omega_r: Form
    Omega_plus: Form
    Omega_minus: Form
    eplus: NullSubspace
    eminus: NullSubspace


def _structure_matrix(first: NullSubspace, second: NullSubspace, lam: Scalar) -> Endomorphism:
    """Real endomorphism of covectors with eigenvalue lam on `first`, -lam on `second`."""
    cols = first.covectors() + second.covectors()
    if len(cols) != 8:
        raise SpinorError(f"eigenspaces span {len(cols)} directions, expected 8")
    v = transpose(cols)
    try:
        v_inv = inverse(v)
    except LinAlgError as ex:
        raise SpinorError("annihilator subspaces are not complementary") from ex
    d = [[ZERO] * 8 for _ in range(8)]
    for k in range(8):
        d[k][k] = lam if k < 4 else -lam
    m = matmul(matmul(v, d), v_inv)
    if any(not x.is_real() for row in m for x in row):
        raise SpinorError("structure endomorphism is not real")
    return Endomorphism(AXES8, tuple(tuple(row) for row in m))


def is_decomposable(form: Form) -> bool:
    """Plücker test: Ω ∧ (v⌟Ω) = 0 for every basis vector v."""
    return all(wedge(form, interior(Vector.basis(a, axes=form.axes), form)).is_zero()
               for a in form.axes)


def structure_from_pure(psi_p: Spinor) -> ComplexStructureData:
    """
    J = +i on M(ψp), -i on M(ψ̂p);  ω = -2i B2(ψ̂p, ψp),  Ω = 2 B4(ψp, ψp).
    """
    hat = conjugate_spinor(psi_p)
    if not spinor_pairing(hat, psi_p) == HALF:
        raise SpinorError(f"normalise ⟨ψ̂, ψ⟩ to 1/2 first (got {spinor_pairing(hat, psi_p)})")
    m_plus = annihilator(psi_p)
    if m_plus.dim != 4 or m_plus.real_index != 0:
        raise SpinorError(f"structure_from_pure needs real index 0, got dim {m_plus.dim} index {m_plus.real_index}")
    J = _structure_matrix(m_plus, annihilator(hat), I)
    omega = bilinear_k(2, hat, psi_p) * (-2 * I)
    Omega = bilinear_k(4, psi_p, psi_p) * 2
    return ComplexStructureData(J, omega, Omega, m_plus)


def structure_from_real_pair(psi_plus: Spinor, psi_minus: Spinor) -> ParaComplexStructureData:
    """
    K = +1 on M(ψ+), -1 on M(ψ-);  Ω± = 2 B4(ψ±, ψ±),  ω_r = 2 B2(ψ+, ψ-).
    """
    for s in (psi_plus, psi_minus):
        if any(not x.is_real() for x in s.comps):
            raise SpinorError("structure_from_real_pair needs real spinors")
        if not is_pure(s):
            raise SpinorError("structure_from_real_pair needs pure spinors")
    if not spinor_pairing(psi_plus, psi_minus) == HALF:
        raise SpinorError(f"normalise ⟨ψ+, ψ-⟩ to 1/2 first (got {spinor_pairing(psi_plus, psi_minus)})")
    m_plus, m_minus = annihilator(psi_plus), annihilator(psi_minus)
    K = _structure_matrix(m_plus, m_minus, ONE)
    return ParaComplexStructureData(
        K=K,
        omega_r=bilinear_k(2, psi_plus, psi_minus) * 2,
        Omega_plus=bilinear_k(4, psi_plus, psi_plus) * 2,
        Omega_minus=bilinear_k(4, psi_minus, psi_minus) * 2,
        eplus=m_plus,
        eminus=m_minus,
    )


def two_form_matrix(form: Form) -> List[List[Scalar]]:
    """Antisymmetric matrix ω_ab of a 2-form."""
    pos = {a: k for k, a in enumerate(form.axes)}
    n = form.dim
    out = [[ZERO] * n for _ in range(n)]
    for (a, b), v in form.coeffs.items():
        out[pos[a]][pos[b]] = v
        out[pos[b]][pos[a]] = -v
    return out

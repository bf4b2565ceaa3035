# cayley/clifford.py
"""
Octonionic models of Cl(8) and Cl(4,4).

Γ0 = [[0, 𝕀], [𝕀, 0]],  Γa = [[0, -E_a], [E_a, 0]]  (E_a = left multiplication
by the a-th imaginary unit of O, or of O' in the split model). Every Γ is a
signed permutation matrix, stored as (column, sign) per row.

Spinors are 16-columns; plus-parity spinors live in the upper 8 slots.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import List, Literal, Sequence, Tuple

from .core.common import ETA, check_signature
from .core.exterior import Endomorphism, Form, Vector
from .core.linalg import nullspace, split_real_imag
from .core.scalar import HALF, ONE, ZERO, Scalar, ScalarLike, as_scalar
from .octonion import ALGEBRA_OF, SIGNATURE_OF, Octonion, left_entries

logger = logging.getLogger("cayley.clifford")

Parity = Literal["plus", "minus", "mixed", "zero"]
SignedPerm = Tuple[Tuple[int, int], ...]  # row r -> (column, sign)


class SpinorError(RuntimeError):
    """Spinor operation got a parity / signature mismatch or a zero spinor."""


# =========================
# Spinor
# =========================

@dataclass(frozen=True, eq=False)
class Spinor:
    signature: str
    comps: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        sig = check_signature(self.signature, error_cls=SpinorError)
        comps = tuple(as_scalar(x) for x in self.comps)
        if len(comps) != 16:
            raise SpinorError(f"spinor needs 16 components, got {len(comps)}")
        object.__setattr__(self, "signature", sig)
        object.__setattr__(self, "comps", comps)

    @classmethod
    def plus(cls, upper: Sequence[ScalarLike], signature: str = "8,0") -> "Spinor":
        return cls(signature, tuple(upper) + (ZERO,) * 8)

    @classmethod
    def minus(cls, lower: Sequence[ScalarLike], signature: str = "8,0") -> "Spinor":
        return cls(signature, (ZERO,) * 8 + tuple(lower))

    @classmethod
    def from_octonion(cls, q: Octonion) -> "Spinor":
        return cls.plus(q.comps, SIGNATURE_OF[q.algebra])

    @classmethod
    def one(cls, signature: str = "8,0") -> "Spinor":
        """The identity octonion 𝕀 in S+."""
        return cls.plus([ONE] + [ZERO] * 7, signature)

    @classmethod
    def basis(cls, a: int, signature: str = "8,0") -> "Spinor":
        """The imaginary unit e_a (a = 0..7) in S+."""
        return cls.plus([ONE if k == a else ZERO for k in range(8)], signature)

    @property
    def parity(self) -> Parity:
        up = any(not x.is_zero() for x in self.comps[:8])
        down = any(not x.is_zero() for x in self.comps[8:])
        if up and down:
            return "mixed"
        if up:
            return "plus"
        return "minus" if down else "zero"

    def upper(self) -> Octonion:
        return Octonion(ALGEBRA_OF[self.signature], self.comps[:8])

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps)

    def _check(self, other: "Spinor") -> None:
        if self.signature != other.signature:
            raise SpinorError(f"signature mismatch: {self.signature} vs {other.signature}")

    def __add__(self, other: "Spinor") -> "Spinor":
        self._check(other)
        return Spinor(self.signature, tuple(x + y for x, y in zip(self.comps, other.comps)))

    def __sub__(self, other: "Spinor") -> "Spinor":
        self._check(other)
        return Spinor(self.signature, tuple(x - y for x, y in zip(self.comps, other.comps)))

    def __neg__(self) -> "Spinor":
        return Spinor(self.signature, tuple(-x for x in self.comps))

    def __mul__(self, s: ScalarLike) -> "Spinor":
        s = as_scalar(s)
        return Spinor(self.signature, tuple(s * x for x in self.comps))

    __rmul__ = __mul__

    def conj(self) -> "Spinor":
        return conjugate_spinor(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Spinor):
            return NotImplemented
        return self.signature == other.signature and self.comps == other.comps

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = " + ".join(f"({x})[{k}]" for k, x in enumerate(self.comps) if not x.is_zero())
        return f"Spinor({self.signature}, {body or '0'})"


def conjugate_spinor(psi: Spinor) -> Spinor:
    """ψ̂: componentwise complex conjugation (all Γ are real in this model)."""
    return Spinor(psi.signature, tuple(x.conj() for x in psi.comps))


def spinor_pairing(psi: Spinor, phi: Spinor) -> Scalar:
    """⟨ψ, φ⟩ = ψᵀ P φ, P the algebra pairing on each 8-block; bilinear."""
    psi._check(phi)
    eta = ETA[psi.signature]
    acc = ZERO
    for k, (x, y) in enumerate(zip(psi.comps, phi.comps)):
        if x.is_zero() or y.is_zero():
            continue
        acc = acc + (x * y if eta[k % 8] > 0 else -(x * y))
    return acc


# =========================
# Gamma matrices
# =========================

@dataclass(frozen=True)
class GammaSet:
    signature: str
    perms: Tuple[SignedPerm, ...]

    def matrix(self, a: int) -> List[List[Scalar]]:
        out = [[ZERO] * 16 for _ in range(16)]
        for r, (c, s) in enumerate(self.perms[a]):
            out[r][c] = ONE if s > 0 else -ONE
        return out

    def block(self, a: int) -> List[List[Scalar]]:
        """E_a: the lower-left 8x8 block of Γa."""
        return [row[:8] for row in self.matrix(a)[8:]]

    @property
    def eta(self) -> Tuple[int, ...]:
        return ETA[self.signature]


@lru_cache(maxsize=None)
def gamma(signature: str = "8,0") -> GammaSet:
    sig = check_signature(signature, error_cls=SpinorError)
    algebra = ALGEBRA_OF[sig]
    perms: List[SignedPerm] = [tuple((r + 8, 1) for r in range(8)) + tuple((r, 1) for r in range(8))]
    for a in range(1, 8):
        rows = [(0, 0)] * 16
        for r, c, v in left_entries(algebra, a):
            rows[r] = (c + 8, -v)
            rows[r + 8] = (c, v)
        perms.append(tuple(rows))
    logger.debug("gamma: built %s model", sig)
    return GammaSet(sig, tuple(perms))


def apply_gamma(a: int, psi: Spinor) -> Spinor:
    perm = gamma(psi.signature).perms[a]
    comps = psi.comps
    return Spinor(psi.signature, tuple(comps[c] if s > 0 else -comps[c] for c, s in perm))


def apply_string(indices: Sequence[int], psi: Spinor) -> Spinor:
    """Γ_{a1}...Γ_{ak} ψ (rightmost factor acts first)."""
    out = psi
    for a in reversed(indices):
        out = apply_gamma(a, out)
    return out


def clifford_defects(signature: str = "8,0") -> List[Tuple[int, int]]:
    """Pairs a <= b with ΓaΓb + ΓbΓa != 2η_ab 𝕀 (empty for a valid model)."""
    sig = check_signature(signature, error_cls=SpinorError)
    eta = ETA[sig]
    units = [Spinor(sig, tuple(ONE if k == j else ZERO for k in range(16))) for j in range(16)]
    bad = []
    for a, b in combinations(range(8), 2):
        if any(not (apply_gamma(a, apply_gamma(b, s)) + apply_gamma(b, apply_gamma(a, s))).is_zero()
               for s in units):
            bad.append((a, b))
    for a in range(8):
        if any(not apply_gamma(a, apply_gamma(a, s)) == s * eta[a] for s in units):
            bad.append((a, a))
    return bad


def gamma_action(v: Vector, psi: Spinor) -> Spinor:
    """Γ(v)ψ = Σ v^a Γa ψ."""
    if v.dim != 8:
        raise SpinorError(f"gamma_action needs an 8-vector, got dim {v.dim}")
    out = Spinor(psi.signature, (ZERO,) * 16)
    for a, x in v.items():
        out = out + apply_gamma(a, psi) * x
    return out


def bilinear_k(k: int, psi: Spinor, phi: Spinor) -> Form:
    """
    B_k(ψ, φ): component on a1<...<ak is ⟨ψ, Γ_{a1}...Γ_{ak} φ⟩.
    """
    psi._check(phi)
    if not 0 <= k <= 8:
        raise SpinorError(f"bilinear degree out of range: {k}")
    for name, s in (("psi", psi), ("phi", phi)):
        if s.parity not in ("plus", "zero"):
            raise SpinorError(f"{name} must have plus parity, got {s.parity}")
    coeffs = {}
    for idx in combinations(range(8), k):
        val = spinor_pairing(psi, apply_string(idx, phi))
        if not val.is_zero():
            coeffs[idx] = val
    return Form(tuple(range(8)), k, coeffs)


# =========================
# spin algebra
# =========================

@dataclass(frozen=True)
class SpinGenerator:
    """
    Paired generator of spin(η): S_ab = ½ΓaΓb on spinors and
    M_ab e_c = η_bc e_a - η_ac e_b on vectors.
    """
    a: int
    b: int
    signature: str
    vector: Endomorphism

    def act(self, psi: Spinor) -> Spinor:
        return apply_string((self.a, self.b), psi) * HALF

    def spinor_matrix(self) -> List[List[Scalar]]:
        cols = [self.act(Spinor(self.signature, tuple(ONE if k == j else ZERO for k in range(16)))).comps
                for j in range(16)]
        return [[cols[j][i] for j in range(16)] for i in range(16)]


@lru_cache(maxsize=None)
def spin_generators(signature: str = "8,0") -> Tuple[SpinGenerator, ...]:
    sig = check_signature(signature, error_cls=SpinorError)
    eta = ETA[sig]
    out = []
    for a, b in combinations(range(8), 2):
        m = Endomorphism.unit(a, b) * eta[b] - Endomorphism.unit(b, a) * eta[a]
        out.append(SpinGenerator(a, b, sig, m))
    return tuple(out)


@dataclass(frozen=True)
class Stabilizer:
    dim: int
    basis: List[List[Scalar]]  # coefficient vectors over spin_generators(signature)


def stabilizer_dim(psi: Spinor) -> Stabilizer:
    """Real dimension of {A ∈ spin(η) : Aψ = 0}."""
    if psi.is_zero():
        raise SpinorError("stabilizer of the zero spinor")
    gens = spin_generators(psi.signature)
    cols = [g.act(psi).comps for g in gens]
    rows = [[cols[j][i] for j in range(len(gens))] for i in range(16)]
    basis = nullspace(split_real_imag(rows), len(gens))
    dim = len(basis)
    logger.debug("stabilizer_dim: %s -> %d", psi.signature, dim)
    return Stabilizer(dim, basis)

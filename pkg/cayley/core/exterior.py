# cayley/core/exterior.py
"""
交代形式エンジン。

Form / Vector / SymBilinear / Endomorphism and the operations every other
module is built on: wedge, interior, hodge, metric_dual, lie_act, pullback.

Basis labels are integers; the ambient label set (``axes``) is part of every
value so that 4d blocks such as span(e0,e5,e6,e7) keep their labels.
Coefficients are keyed by strictly increasing label tuples.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .common import Index, ambient_axes, index_subsets, perm_sign
from .linalg import LinAlgError, congruence_signature, det, inverse, matmul, transpose
from .scalar import ONE, ZERO, Scalar, ScalarError, ScalarLike, as_scalar, format_scalar, sqrt_real

logger = logging.getLogger("cayley.exterior")


class FormError(RuntimeError):
    """Form operation got mismatched axes, a bad grade or a malformed index."""


class MetricError(RuntimeError):
    """Metric is degenerate, not symmetric or has no exact volume factor."""


def _axes_for(dim: int, axes: Optional[Sequence[int]]) -> Index:
    if axes is not None:
        return tuple(sorted(axes))
    try:
        return ambient_axes(dim)
    except ValueError as ex:
        raise FormError(str(ex)) from ex


def _merge_sign(i: Index, j: Index) -> int:
    """Sign of sorting i + j for disjoint increasing i, j."""
    inv = 0
    for x in i:
        for y in j:
            if x > y:
                inv += 1
    return -1 if inv & 1 else 1


def _scalar_mul(x: Scalar, sign: int) -> Scalar:
    return x if sign > 0 else -x


# =========================
# Vector
# =========================

@dataclass(frozen=True, eq=False)
class Vector:
    """Vector with one Scalar component per axis label."""
    axes: Index
    comps: Tuple[Scalar, ...]

    def __post_init__(self) -> None:
        axes = tuple(self.axes)
        comps = tuple(as_scalar(x) for x in self.comps)
        if len(axes) != len(comps):
            raise FormError(f"vector has {len(comps)} components for {len(axes)} axes")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "comps", comps)

    @classmethod
    def zero(cls, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "Vector":
        ax = _axes_for(dim, axes)
        return cls(ax, (ZERO,) * len(ax))

    @classmethod
    def basis(cls, label: int, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "Vector":
        return cls.from_dict({label: ONE}, dim=dim, axes=axes)

    @classmethod
    def from_dict(cls, comps: Dict[int, ScalarLike], dim: int = 8,
                  axes: Optional[Sequence[int]] = None) -> "Vector":
        ax = _axes_for(dim, axes)
        unknown = set(comps) - set(ax)
        if unknown:
            raise FormError(f"labels {sorted(unknown)} not in axes {ax}")
        return cls(ax, tuple(as_scalar(comps.get(a, ZERO)) for a in ax))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def __getitem__(self, label: int) -> Scalar:
        try:
            return self.comps[self.axes.index(label)]
        except ValueError as ex:
            raise FormError(f"label {label} not in axes {self.axes}") from ex

    def items(self) -> List[Tuple[int, Scalar]]:
        return [(a, x) for a, x in zip(self.axes, self.comps) if not x.is_zero()]

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps)

    def _check(self, other: "Vector") -> None:
        if self.axes != other.axes:
            raise FormError(f"axes mismatch: {self.axes} vs {other.axes}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.axes, tuple(x + y for x, y in zip(self.comps, other.comps)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.axes, tuple(x - y for x, y in zip(self.comps, other.comps)))

    def __neg__(self) -> "Vector":
        return Vector(self.axes, tuple(-x for x in self.comps))

    def __mul__(self, s: ScalarLike) -> "Vector":
        s = as_scalar(s)
        return Vector(self.axes, tuple(s * x for x in self.comps))

    __rmul__ = __mul__

    def conj(self) -> "Vector":
        return Vector(self.axes, tuple(x.conj() for x in self.comps))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.axes == other.axes and self.comps == other.comps

    __hash__ = None  # type: ignore[assignment]

    def to_array(self) -> np.ndarray:
        return np.array([x.to_complex() for x in self.comps], dtype=complex)

    def __repr__(self) -> str:
        body = " + ".join(f"({format_scalar(x)}) e{a}" for a, x in self.items())
        return f"Vector({body or '0'})"


# =========================
# Form
# =========================

@dataclass(frozen=True, eq=False)
class Form:
    """
    Sparse alternating k-form.

    coeffs maps strictly increasing label tuples to nonzero Scalars; zeros
    are dropped on construction.
    """
    axes: Index
    grade: int
    coeffs: Dict[Index, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        axes = tuple(self.axes)
        if list(axes) != sorted(set(axes)):
            raise FormError(f"axes must be strictly increasing: {axes}")
        if not 0 <= self.grade <= len(axes):
            raise FormError(f"grade {self.grade} out of range for dim {len(axes)}")
        aset = set(axes)
        clean: Dict[Index, Scalar] = {}
        for idx, val in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.grade:
                raise FormError(f"index {idx} has wrong length for grade {self.grade}")
            if any(i not in aset for i in idx):
                raise FormError(f"index {idx} not in axes {axes}")
            if any(idx[k] >= idx[k + 1] for k in range(len(idx) - 1)):
                raise FormError(f"index {idx} is not strictly increasing")
            v = as_scalar(val)
            if not v.is_zero():
                clean[idx] = v
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "coeffs", clean)

    # -----------------------------
    # constructors
    # -----------------------------
    @classmethod
    def zero(cls, grade: int, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "Form":
        return cls(_axes_for(dim, axes), grade, {})

    @classmethod
    def scalar(cls, value: ScalarLike, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "Form":
        return cls(_axes_for(dim, axes), 0, {(): as_scalar(value)})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Sequence[int], ScalarLike]], grade: int,
                   dim: int = 8, axes: Optional[Sequence[int]] = None,
                   normalize: bool = True) -> "Form":
        """
        Accumulate (index, coefficient) terms.

        normalize=True sorts indices with the permutation sign and drops
        terms with a repeated index; otherwise both raise FormError.
        """
        out: Dict[Index, Scalar] = {}
        for idx, val in terms:
            idx = tuple(idx)
            sign = perm_sign(idx)
            key = tuple(sorted(idx))
            if not normalize and (sign == 0 or key != idx):
                raise FormError(f"index {idx} is not strictly increasing")
            if sign == 0:
                continue
            out[key] = out.get(key, ZERO) + _scalar_mul(as_scalar(val), sign)
        return cls(_axes_for(dim, axes), grade, out)

    # -----------------------------
    # access
    # -----------------------------
    @property
    def dim(self) -> int:
        return len(self.axes)

    def __getitem__(self, idx: Sequence[int]) -> Scalar:
        """Coefficient on e^{idx}, for any ordering of idx."""
        idx = tuple(idx)
        sign = perm_sign(idx)
        if sign == 0:
            return ZERO
        return _scalar_mul(self.coeffs.get(tuple(sorted(idx)), ZERO), sign)

    def terms(self) -> List[Tuple[Index, Scalar]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.coeffs.values())

    def top_coefficient(self) -> Scalar:
        if self.grade != self.dim:
            raise FormError(f"grade {self.grade} form is not a top form in dim {self.dim}")
        return self.coeffs.get(self.axes, ZERO)

    # -----------------------------
    # arithmetic
    # -----------------------------
    def _check(self, other: "Form", *, same_grade: bool = True) -> None:
        if self.axes != other.axes:
            raise FormError(f"axes mismatch: {self.axes} vs {other.axes}")
        if same_grade and self.grade != other.grade:
            raise FormError(f"grade mismatch: {self.grade} vs {other.grade}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return Form(self.axes, self.grade, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.axes, self.grade, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, s: ScalarLike) -> "Form":
        s = as_scalar(s)
        return Form(self.axes, self.grade, {k: s * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, s: ScalarLike) -> "Form":
        return self * as_scalar(s).inv()

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def conj(self) -> "Form":
        return Form(self.axes, self.grade, {k: v.conj() for k, v in self.coeffs.items()})

    def real(self) -> "Form":
        return Form(self.axes, self.grade, {k: v.real() for k, v in self.coeffs.items()})

    def imag(self) -> "Form":
        return Form(self.axes, self.grade, {k: v.imag() for k, v in self.coeffs.items()})

    def restrict(self, axes: Sequence[int]) -> "Form":
        """Pull back to span(axes): keep only terms with every leg in axes."""
        sub = tuple(sorted(axes))
        keep = set(sub)
        if not keep <= set(self.axes):
            raise FormError(f"axes {sub} not contained in {self.axes}")
        return Form(sub, self.grade, {k: v for k, v in self.coeffs.items() if set(k) <= keep})

    def extend(self, axes: Sequence[int]) -> "Form":
        """Same coefficients, viewed in a larger label set."""
        big = tuple(sorted(axes))
        if not set(self.axes) <= set(big):
            raise FormError(f"axes {self.axes} not contained in {big}")
        return Form(big, self.grade, dict(self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.axes == other.axes and self.grade == other.grade and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def coordinates(self) -> List[Scalar]:
        """Exact coefficient list over index_subsets(axes, grade)."""
        return [self.coeffs.get(idx, ZERO) for idx in index_subsets(self.axes, self.grade)]

    @classmethod
    def from_coordinates(cls, values: Sequence[ScalarLike], grade: int,
                         axes: Sequence[int]) -> "Form":
        ax = tuple(sorted(axes))
        slots = index_subsets(ax, grade)
        if len(values) != len(slots):
            raise FormError(f"{len(values)} coordinates for {len(slots)} slots")
        return cls(ax, grade, {idx: as_scalar(v) for idx, v in zip(slots, values)})

    # -----------------------------
    # float shadow
    # -----------------------------
    def to_array(self) -> np.ndarray:
        """Dense complex coefficient vector over index_subsets(axes, grade)."""
        return np.array([self.coeffs.get(idx, ZERO).to_complex()
                         for idx in index_subsets(self.axes, self.grade)], dtype=complex)

    def __repr__(self) -> str:
        return f"Form(grade={self.grade}, {format_form(self)})"


def format_form(a: Form) -> str:
    if a.is_zero():
        return "0"
    return " + ".join(f"({format_scalar(v)}) e{''.join(map(str, k)) or '∅'}" for k, v in a.terms())


def e(*labels: Union[int, str], dim: int = 8, axes: Optional[Sequence[int]] = None,
      coeff: ScalarLike = 1) -> Form:
    """
    Basis monomial e^{l1 l2 ...}; e(4, 1, 2, 3) == e("4123") == -e(1, 2, 3, 4).
    """
    if len(labels) == 1 and isinstance(labels[0], str):
        idx = tuple(int(ch) for ch in labels[0])
    else:
        idx = tuple(int(x) for x in labels)
    sign = perm_sign(idx)
    if sign == 0:
        raise FormError(f"repeated index in e{idx}")
    return Form(_axes_for(dim, axes), len(idx), {tuple(sorted(idx)): _scalar_mul(as_scalar(coeff), sign)})


def covector(v: Vector) -> Form:
    """Components of v read as a 1-form in the same basis (no metric)."""
    return Form(v.axes, 1, {(a,): x for a, x in v.items()})


def volume(dim: int = 8, axes: Optional[Sequence[int]] = None) -> Form:
    ax = _axes_for(dim, axes)
    return Form(ax, len(ax), {ax: ONE})


# =========================
# SymBilinear / Endomorphism
# =========================

Rows = Tuple[Tuple[Scalar, ...], ...]


def _freeze(rows: Sequence[Sequence[ScalarLike]]) -> Rows:
    return tuple(tuple(as_scalar(x) for x in row) for row in rows)


@dataclass(frozen=True, eq=False)
class SymBilinear:
    """Exact symmetric bilinear form (metric candidate) on span(axes)."""
    axes: Index
    entries: Rows

    def __post_init__(self) -> None:
        rows = _freeze(self.entries)
        n = len(self.axes)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise MetricError(f"metric must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if not rows[i][j] == rows[j][i]:
                    raise MetricError(f"metric not symmetric at ({self.axes[i]},{self.axes[j]})")
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "entries", rows)

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike], axes: Optional[Sequence[int]] = None) -> "SymBilinear":
        ax = _axes_for(len(values), axes)
        n = len(ax)
        return cls(ax, tuple(tuple(as_scalar(values[i]) if i == j else ZERO for j in range(n))
                             for i in range(n)))

    @classmethod
    def delta(cls, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "SymBilinear":
        return cls.diagonal([1] * dim, axes)

    @property
    def dim(self) -> int:
        return len(self.axes)

    def __getitem__(self, pair: Tuple[int, int]) -> Scalar:
        i, j = pair
        return self.entries[self.axes.index(i)][self.axes.index(j)]

    def matrix(self) -> List[List[Scalar]]:
        return [list(r) for r in self.entries]

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.entries) for j, x in enumerate(r) if i != j)

    def diag(self) -> Tuple[Scalar, ...]:
        return tuple(self.entries[i][i] for i in range(self.dim))

    def det(self) -> Scalar:
        if self.is_diagonal():
            out = ONE
            for x in self.diag():
                out = out * x
            return out
        return det(self.entries)

    def inverse(self) -> "SymBilinear":
        if self.is_diagonal():
            try:
                return SymBilinear.diagonal([x.inv() for x in self.diag()], self.axes)
            except ScalarError as ex:
                raise MetricError("metric is degenerate") from ex
        try:
            return SymBilinear(self.axes, _freeze(inverse(self.entries)))
        except LinAlgError as ex:
            raise MetricError("metric is degenerate") from ex

    def signature(self) -> Tuple[int, int]:
        try:
            p, q, z = congruence_signature(self.entries)
        except LinAlgError as ex:
            raise MetricError(str(ex)) from ex
        if z:
            raise MetricError(f"metric is degenerate (nullity {z})")
        return p, q

    def pair(self, u: Vector, v: Vector) -> Scalar:
        acc = ZERO
        for i, x in enumerate(u.comps):
            if x.is_zero():
                continue
            for j, y in enumerate(v.comps):
                g = self.entries[i][j]
                if not y.is_zero() and not g.is_zero():
                    acc = acc + x * g * y
        return acc

    def transform(self, a: "Endomorphism") -> "SymBilinear":
        """AᵀgA."""
        return SymBilinear(self.axes, _freeze(matmul(transpose(a.matrix), matmul(self.entries, a.matrix))))

    def __mul__(self, s: ScalarLike) -> "SymBilinear":
        s = as_scalar(s)
        return SymBilinear(self.axes, tuple(tuple(s * x for x in r) for r in self.entries))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymBilinear):
            return NotImplemented
        return self.axes == other.axes and self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    def to_array(self) -> np.ndarray:
        return np.array([[x.to_complex().real for x in r] for r in self.entries], dtype=float)


@dataclass(frozen=True)
class NumericMetric:
    """Float metric produced by the iterative / normalising steps."""
    axes: Index
    matrix: np.ndarray
    signature: Tuple[int, int]


def numeric_signature(m: np.ndarray, tol: float = 1e-9) -> Tuple[int, int]:
    ev = np.linalg.eigvalsh((m + m.T) / 2)
    scale = max(1.0, float(np.max(np.abs(ev))))
    if np.any(np.abs(ev) < tol * scale):
        raise MetricError(f"metric is numerically degenerate: eigenvalues {ev}")
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


@dataclass(frozen=True, eq=False)
class Endomorphism:
    """Linear map on span(axes); matrix[i][j] is the e_i component of A e_j."""
    axes: Index
    matrix: Rows

    def __post_init__(self) -> None:
        rows = _freeze(self.matrix)
        n = len(self.axes)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise FormError(f"endomorphism must be {n}x{n}")
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "Endomorphism":
        ax = _axes_for(dim, axes)
        n = len(ax)
        return cls(ax, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, a: int, b: int, dim: int = 8, axes: Optional[Sequence[int]] = None) -> "Endomorphism":
        """Matrix unit: 1 at (a, b)."""
        ax = _axes_for(dim, axes)
        i, j = ax.index(a), ax.index(b)
        n = len(ax)
        return cls(ax, tuple(tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], axes: Optional[Sequence[int]] = None) -> "Endomorphism":
        return cls(_axes_for(len(rows), axes), _freeze(rows))

    @property
    def dim(self) -> int:
        return len(self.axes)

    def _check(self, other: "Endomorphism") -> None:
        if self.axes != other.axes:
            raise FormError(f"axes mismatch: {self.axes} vs {other.axes}")

    def __matmul__(self, other: "Endomorphism") -> "Endomorphism":
        self._check(other)
        return Endomorphism(self.axes, _freeze(matmul(self.matrix, other.matrix)))

    def __add__(self, other: "Endomorphism") -> "Endomorphism":
        self._check(other)
        return Endomorphism(self.axes, tuple(tuple(x + y for x, y in zip(r, s))
                                             for r, s in zip(self.matrix, other.matrix)))

    def __sub__(self, other: "Endomorphism") -> "Endomorphism":
        return self + other * -1

    def __mul__(self, s: ScalarLike) -> "Endomorphism":
        s = as_scalar(s)
        return Endomorphism(self.axes, tuple(tuple(s * x for x in r) for r in self.matrix))

    __rmul__ = __mul__

    def bracket(self, other: "Endomorphism") -> "Endomorphism":
        return self @ other - other @ self

    def transpose(self) -> "Endomorphism":
        return Endomorphism(self.axes, _freeze(transpose(self.matrix)))

    def apply(self, v: Vector) -> Vector:
        if v.axes != self.axes:
            raise FormError(f"axes mismatch: {self.axes} vs {v.axes}")
        out = []
        for row in self.matrix:
            acc = ZERO
            for x, y in zip(row, v.comps):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out.append(acc)
        return Vector(self.axes, tuple(out))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.matrix for x in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.axes == other.axes and self.matrix == other.matrix

    __hash__ = None  # type: ignore[assignment]

    def to_array(self) -> np.ndarray:
        return np.array([[x.to_complex() for x in r] for r in self.matrix], dtype=complex)


# =========================
# operations
# =========================

def wedge(a: Form, b: Form) -> Form:
    a._check(b, same_grade=False)
    grade = a.grade + b.grade
    if grade > a.dim:
        # nothing survives; the zero top form stands in for it
        return Form(a.axes, a.dim, {})
    out: Dict[Index, Scalar] = {}
    for i, x in a.coeffs.items():
        si = set(i)
        for j, y in b.coeffs.items():
            if si.intersection(j):
                continue
            key = tuple(sorted(i + j))
            val = _scalar_mul(x * y, _merge_sign(i, j))
            out[key] = out.get(key, ZERO) + val
    return Form(a.axes, grade, out)


def wedge_all(*forms: Form) -> Form:
    if not forms:
        raise FormError("wedge_all needs at least one form")
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def interior(v: Vector, a: Form) -> Form:
    """v⌟a, inserting v into the first slot."""
    if a.grade == 0:
        raise FormError("interior product of a 0-form")
    if v.axes != a.axes:
        raise FormError(f"axes mismatch: {v.axes} vs {a.axes}")
    comps = dict(v.items())
    out: Dict[Index, Scalar] = {}
    for idx, val in a.coeffs.items():
        for j, m in enumerate(idx):
            c = comps.get(m)
            if c is None:
                continue
            key = idx[:j] + idx[j + 1:]
            term = val * c
            out[key] = out.get(key, ZERO) + (term if j % 2 == 0 else -term)
    return Form(a.axes, a.grade - 1, out)


def evaluate(a: Form, *vectors: Vector) -> Scalar:
    """a(v1, ..., vk) = vk⌟...⌟v1⌟a."""
    if len(vectors) != a.grade:
        raise FormError(f"grade {a.grade} form evaluated on {len(vectors)} vectors")
    out = a
    for v in vectors:
        out = interior(v, out)
    return out.coeffs.get((), ZERO)


def _raise_indices(a: Form, g: SymBilinear) -> Dict[Index, Scalar]:
    """Components a^J = Σ_I a_I (g⁻¹)^{IJ} with (g⁻¹)^{IJ} the k×k minor of g⁻¹."""
    ginv = g.inverse()
    pos = {x: i for i, x in enumerate(a.axes)}
    if ginv.is_diagonal():
        d = ginv.diag()
        out = {}
        for idx, val in a.coeffs.items():
            f = val
            for m in idx:
                f = f * d[pos[m]]
            out[idx] = f
        return out
    m = ginv.entries
    out: Dict[Index, Scalar] = {}
    subsets = index_subsets(a.axes, a.grade)
    for idx, val in a.coeffs.items():
        rows = [pos[x] for x in idx]
        for jdx in subsets:
            cols = [pos[x] for x in jdx]
            minor = det([[m[r][c] for c in cols] for r in rows]) if rows else ONE
            if not minor.is_zero():
                out[jdx] = out.get(jdx, ZERO) + val * minor
    return out


def reference_volume(g: SymBilinear, sign: int = 1) -> Form:
    """±√|det g| e^{axes}; MetricError if g is degenerate or the root leaves Q(√2)."""
    d = g.det()
    if d.is_zero():
        raise MetricError("metric is degenerate")
    try:
        root = sqrt_real(d.abs())
    except ScalarError as ex:
        raise MetricError(f"volume factor √|det g| is not exact: {ex}") from ex
    return Form(g.axes, g.dim, {g.axes: root if sign > 0 else -root})


def hodge(a: Form, g: SymBilinear, orientation: Form) -> Form:
    """
    Hodge star with respect to g; the orientation is the sign of the top form.

    *a = s·√|det g| Σ_J a^J ε(J, Jᶜ) e^{Jᶜ}, so that a∧*b = ⟨a, b⟩_g vol_g.
    """
    if orientation.grade != orientation.dim or orientation.is_zero():
        raise FormError("orientation must be a nonzero top form")
    if not (a.axes == g.axes == orientation.axes):
        raise FormError(f"axes mismatch: {a.axes} / {g.axes} / {orientation.axes}")
    try:
        s = orientation.top_coefficient().sign()
    except ScalarError as ex:
        raise FormError("orientation must be real") from ex
    factor = reference_volume(g, s).top_coefficient()
    out: Dict[Index, Scalar] = {}
    for jdx, val in _raise_indices(a, g).items():
        comp = tuple(x for x in a.axes if x not in jdx)
        out[comp] = _scalar_mul(factor * val, perm_sign(jdx + comp))
    return Form(a.axes, a.dim - a.grade, out)


def inner(a: Form, b: Form, g: SymBilinear) -> Scalar:
    """Induced bilinear pairing ⟨a, b⟩_g on k-forms (no conjugation)."""
    a._check(b)
    acc = ZERO
    for idx, val in _raise_indices(b, g).items():
        x = a.coeffs.get(idx)
        if x is not None:
            acc = acc + x * val
    return acc


def metric_dual(x: Union[Vector, Form], g: SymBilinear) -> Union[Form, Vector]:
    """Vector -> 1-form via g, 1-form -> vector via g⁻¹."""
    if isinstance(x, Vector):
        if x.axes != g.axes:
            raise FormError(f"axes mismatch: {x.axes} vs {g.axes}")
        out = {}
        for i, a in enumerate(g.axes):
            acc = ZERO
            for j, y in enumerate(x.comps):
                if not y.is_zero():
                    acc = acc + g.entries[i][j] * y
            out[(a,)] = acc
        return Form(g.axes, 1, out)
    if isinstance(x, Form):
        if x.grade != 1:
            raise FormError(f"metric_dual needs a 1-form, got grade {x.grade}")
        if x.axes != g.axes:
            raise FormError(f"axes mismatch: {x.axes} vs {g.axes}")
        ginv = g.inverse().entries
        comps = []
        for i in range(g.dim):
            acc = ZERO
            for j, a in enumerate(g.axes):
                y = x.coeffs.get((a,))
                if y is not None:
                    acc = acc + ginv[i][j] * y
            comps.append(acc)
        return Vector(g.axes, tuple(comps))
    raise FormError(f"metric_dual cannot dualise {type(x).__name__}")


def lie_act(a_map: Endomorphism, a: Form) -> Form:
    """
    gl action on forms: A·e^m = -Σ_n A[m][n] e^n, extended as a derivation,
    i.e. (A·a)(ξ1..ξk) = -Σ_j a(ξ1, .., Aξj, .., ξk).
    """
    if a_map.axes != a.axes:
        raise FormError(f"axes mismatch: {a_map.axes} vs {a.axes}")
    pos = {x: i for i, x in enumerate(a.axes)}
    rows = [[(a.axes[n], c) for n, c in enumerate(r) if not c.is_zero()] for r in a_map.matrix]
    out: Dict[Index, Scalar] = {}
    for idx, val in a.coeffs.items():
        for j, m in enumerate(idx):
            for n, c in rows[pos[m]]:
                if n != m and n in idx:
                    continue
                new = idx[:j] + (n,) + idx[j + 1:]
                key = tuple(sorted(new))
                term = _scalar_mul(val * c, perm_sign(new))
                out[key] = out.get(key, ZERO) - term
    return Form(a.axes, a.grade, out)


def pullback(a: Form, a_map: Endomorphism) -> Form:
    """A*a: substitute e^i -> Σ_j A[i][j] e^j."""
    if a_map.axes != a.axes:
        raise FormError(f"axes mismatch: {a_map.axes} vs {a.axes}")
    images = {x: Form(a.axes, 1, {(a.axes[j],): c for j, c in enumerate(row)})
              for x, row in zip(a.axes, a_map.matrix)}
    out = Form(a.axes, a.grade, {})
    for idx, val in a.coeffs.items():
        if not idx:
            out = out + Form.scalar(val, axes=a.axes)
            continue
        out = out + wedge_all(*(images[x] for x in idx)) * val
    return out

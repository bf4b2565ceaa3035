# cayley/core/linalg.py
"""
Exact linear algebra over Q(√2)(i).

Rows are kept sparse (column -> Scalar) during elimination; dense matrices
are plain lists of lists of Scalar. Everything here is exact: pivots are
detected by exact zero tests, never by tolerances.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar, ScalarError, as_scalar

logger = logging.getLogger("cayley.linalg")

Row = Dict[int, Scalar]
Matrix = List[List[Scalar]]


class LinAlgError(RuntimeError):
    """Exact linear-algebra operation failed (singular matrix, shape mismatch)."""


# =========================
# dense helpers
# =========================

def zeros(n: int, m: Optional[int] = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = ONE
    return out


def diag(values: Sequence) -> Matrix:
    out = zeros(len(values))
    for i, v in enumerate(values):
        out[i][i] = as_scalar(v)
    return out


def transpose(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    if len(a[0]) != len(b):
        raise LinAlgError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    bt = transpose(b)
    out: Matrix = []
    for row in a:
        nz = [(k, v) for k, v in enumerate(row) if not v.is_zero()]
        out_row = []
        for col in bt:
            acc = ZERO
            for k, v in nz:
                w = col[k]
                if not w.is_zero():
                    acc = acc + v * w
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> List[Scalar]:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return out


def mat_add(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]], scale: Scalar = ONE) -> Matrix:
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Sequence[Sequence[Scalar]], s) -> Matrix:
    s = as_scalar(s)
    return [[s * x for x in row] for row in a]


def is_zero_matrix(a: Sequence[Sequence[Scalar]]) -> bool:
    return all(x.is_zero() for row in a for x in row)


# =========================
# elimination
# =========================

def _sparse(rows: Sequence[Sequence[Scalar]]) -> List[Row]:
    out = []
    for row in rows:
        r = {j: v for j, v in enumerate(row) if not v.is_zero()}
        if r:
            out.append(r)
    return out


def _axpy(target: Row, factor: Scalar, source: Row) -> None:
    """target -= factor * source (in place, zeros dropped)."""
    for j, v in source.items():
        new = target.get(j, ZERO) - factor * v
        if new.is_zero():
            target.pop(j, None)
        else:
            target[j] = new


def echelon(rows: Sequence[Sequence[Scalar]], ncols: int, *, reduced: bool = True) -> Tuple[List[Row], List[int]]:
    """
    Row echelon form of rows (dense input, sparse output).

    Returns (pivot_rows, pivot_columns); pivot rows are normalised to a
    leading 1. With reduced=True the pivot columns are cleared above too.
    """
    pending = _sparse(rows)
    pivots: List[Row] = []
    pivot_cols: List[int] = []
    for col in range(ncols):
        idx = next((k for k, r in enumerate(pending) if col in r), None)
        if idx is None:
            continue
        prow = pending.pop(idx)
        inv = prow[col].inv()
        if not (inv == ONE):
            prow = {j: v * inv for j, v in prow.items()}
        for r in pending:
            f = r.get(col)
            if f is not None:
                _axpy(r, f, prow)
        pending = [r for r in pending if r]
        if reduced:
            for r in pivots:
                f = r.get(col)
                if f is not None:
                    _axpy(r, f, prow)
        pivots.append(prow)
        pivot_cols.append(col)
        if not pending:
            break
    logger.debug("echelon: %d rows x %d cols -> rank %d", len(rows), ncols, len(pivots))
    return pivots, pivot_cols


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    if not rows:
        return 0
    _, cols = echelon(rows, len(rows[0]), reduced=False)
    return len(cols)


def split_real_imag(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    """Stack real and imaginary parts so that real-linear ranks can be taken."""
    out: Matrix = []
    for row in rows:
        out.append([x.real() for x in row])
        if any(not x.is_real() for x in row):
            out.append([x.imag() for x in row])
    return out


def real_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over R of a map with real parameters (columns) and complex outputs (rows)."""
    return rank(split_real_imag(rows))


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> List[List[Scalar]]:
    """Basis of {x : rows·x = 0}."""
    pivots, cols = echelon(rows, ncols, reduced=True)
    free = [j for j in range(ncols) if j not in set(cols)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for prow, pc in zip(pivots, cols):
            v = prow.get(f)
            if v is not None:
                x[pc] = -v
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> Optional[List[Scalar]]:
    """One solution of a·x = b (free variables set to zero), or None if inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    pivots, cols = echelon(aug, ncols + 1, reduced=True)
    if ncols in cols:
        return None
    x = [ZERO] * ncols
    for prow, pc in zip(pivots, cols):
        x[pc] = prow.get(ncols, ZERO)
    return x


def span_coefficients(vector: Sequence[Scalar], basis: Sequence[Sequence[Scalar]]) -> Optional[List[Scalar]]:
    """Coefficients c with Σ c_k basis_k = vector, or None if vector is outside the span."""
    if not basis:
        return [] if all(x.is_zero() for x in vector) else None
    return solve(transpose(basis), vector)


def intersection_dim(u: Sequence[Sequence[Scalar]], v: Sequence[Sequence[Scalar]]) -> int:
    return rank(u) + rank(v) - rank(list(u) + list(v))


def det(a: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(a)
    m = [list(row) for row in a]
    out = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        p = m[col][col]
        out = out * p
        inv = p.inv()
        for r in range(col + 1, n):
            f = m[r][col]
            if f.is_zero():
                continue
            f = f * inv
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out


def inverse(a: Sequence[Sequence[Scalar]]) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    pivots, cols = echelon(aug, 2 * n, reduced=True)
    if cols[:n] != list(range(n)) or len(cols) < n:
        raise LinAlgError("matrix is singular")
    return [[prow.get(n + j, ZERO) for j in range(n)] for prow in pivots[:n]]


def congruence_signature(sym: Sequence[Sequence[Scalar]]) -> Tuple[int, int, int]:
    """
    (positive, negative, zero) counts of a real symmetric matrix over Q(√2),
    by exact congruence diagonalisation.
    """
    m = [list(row) for row in sym]
    p = q = 0
    while m:
        n = len(m)
        i = next((k for k in range(n) if not m[k][k].is_zero()), None)
        if i is None:
            pair = next(((r, c) for r in range(n) for c in range(n) if not m[r][c].is_zero()), None)
            if pair is None:
                return p, q, n
            r, c = pair
            # e_r -> e_r + e_c makes the (r, r) entry 2·m[r][c] != 0
            m[r] = [x + y for x, y in zip(m[r], m[c])]
            for row in m:
                row[r] = row[r] + row[c]
            i = r
        d = m[i][i]
        try:
            s = d.sign()
        except ScalarError as ex:
            raise LinAlgError("signature requires a real symmetric matrix") from ex
        if s > 0:
            p += 1
        else:
            q += 1
        inv = d.inv()
        rest = [k for k in range(n) if k != i]
        m = [[m[j][k] - m[j][i] * m[i][k] * inv for k in rest] for j in rest]
    return p, q, 0

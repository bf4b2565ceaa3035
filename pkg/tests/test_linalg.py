from __future__ import annotations

from fractions import Fraction

import pytest

from cayley.core.linalg import (
    LinAlgError,
    congruence_signature,
    det,
    intersection_dim,
    inverse,
    matmul,
    nullspace,
    rank,
    real_rank,
    span_coefficients,
)
from cayley.core.scalar import I, ONE, SQRT2, ZERO, Scalar


def S(x) -> Scalar:
    return Scalar(Fraction(x))


def mat(rows):
    return [[x if isinstance(x, Scalar) else S(x) for x in r] for r in rows]


# -----------------------------
# rank / nullspace
# -----------------------------


def test_rank_and_nullspace():
    a = mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(a) == 2
    kernel = nullspace(a, 3)
    assert len(kernel) == 1
    for row in a:
        assert sum((x * y for x, y in zip(row, kernel[0])), ZERO) == ZERO


def test_rank_over_extension_field():
    # (1, √2) and (√2, 2) are proportional over Q(√2)
    a = [[ONE, SQRT2], [SQRT2, S(2)]]
    assert rank(a) == 1


def test_real_rank_counts_real_parameters():
    # x -> i·x is rank 1 over C but the real and imaginary rows are independent of 1 -> x
    assert rank([[I], [ONE]]) == 1
    assert real_rank([[I], [ONE]]) == 1
    assert real_rank([[ONE, I]]) == 2


def test_span_and_intersection():
    u = mat([[1, 0, 0], [0, 1, 0]])
    v = mat([[1, 1, 0], [0, 0, 1]])
    assert intersection_dim(u, v) == 1
    assert span_coefficients([S(2), S(3), ZERO], u) == [S(2), S(3)]
    assert span_coefficients([ZERO, ZERO, ONE], u) is None


# -----------------------------
# det / inverse / signature
# -----------------------------


def test_det_and_inverse():
    a = mat([[2, 1], [1, 1]])
    assert det(a) == 1
    assert matmul(a, inverse(a)) == mat([[1, 0], [0, 1]])


def test_inverse_singular():
    with pytest.raises(LinAlgError):
        inverse(mat([[1, 2], [2, 4]]))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0], [0, 1]], (2, 0, 0)),
        ([[0, 1], [1, 0]], (1, 1, 0)),
        ([[1, 1], [1, 1]], (1, 0, 1)),
        ([[-1, 0, 0], [0, 2, 0], [0, 0, -3]], (1, 2, 0)),
    ],
)
def test_congruence_signature(rows, expected):
    assert congruence_signature(mat(rows)) == expected

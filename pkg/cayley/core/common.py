# cayley/core/common.py
from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Sequence, Tuple, Type

Index = Tuple[int, ...]


class SignatureError(RuntimeError):
    """Signature tag could not be mapped to a supported model."""


SIGNATURES = ("8,0", "4,4")

# diagonal of the model metric on R^8 (index 0 is the identity direction)
ETA: Dict[str, Tuple[int, ...]] = {
    "8,0": (1, 1, 1, 1, 1, 1, 1, 1),
    "4,4": (1, -1, -1, -1, -1, 1, 1, 1),
}

_AXES: Dict[int, Tuple[int, ...]] = {
    8: tuple(range(8)),
    7: tuple(range(1, 8)),
    4: tuple(range(4)),
}


def check_signature(sig: str, *, error_cls: Type[Exception] = SignatureError) -> str:
    """Normalise "8,0" / "(4,4)" / "4, 4" to the canonical tag; raise error_cls on unknown."""
    s = sig.strip().strip("()").replace(" ", "")
    if s not in SIGNATURES:
        raise error_cls(f"Unsupported signature: {sig}")
    return s


def ambient_axes(dim: int) -> Tuple[int, ...]:
    """Index labels of the ambient basis: e0..e7, e1..e7 for the imaginary 7-space, e0..e3."""
    if dim not in _AXES:
        raise ValueError(f"Unsupported ambient dimension: {dim}")
    return _AXES[dim]


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting seq; 0 if seq has a repeated entry."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def index_subsets(axes: Sequence[int], k: int) -> List[Index]:
    return [tuple(c) for c in combinations(sorted(axes), k)]

# cayley/core/scalar.py
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction]


class ScalarError(RuntimeError):
    """Exact scalar operation failed (division by zero, root outside the field)."""


def _q(x: Rational) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


def _rmul(p: Fraction, q: Fraction, r: Fraction, s: Fraction):
    """(p + q√2)(r + s√2) in Q(√2)."""
    if not q and not s:
        return p * r, Fraction(0)
    return p * r + 2 * q * s, p * s + q * r


def _rsign(p: Fraction, q: Fraction) -> int:
    """Exact sign of p + q√2."""
    if not q:
        return (p > 0) - (p < 0)
    if not p:
        return (q > 0) - (q < 0)
    sp = 1 if p > 0 else -1
    sq = 1 if q > 0 else -1
    if sp == sq:
        return sp
    return sp if p * p > 2 * q * q else sq


@dataclass(frozen=True, slots=True, eq=False)
class Scalar:
    """
    Element of Q(√2)(i): a + b·√2 + i(c + d·√2).

    All four components are Fractions; equality and hashing are exact.
    """
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if type(v) is not Fraction:
                object.__setattr__(self, name, Fraction(v))

    # -----------------------------
    # predicates
    # -----------------------------
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -----------------------------
    # parts
    # -----------------------------
    def conj(self) -> "Scalar":
        if not (self.c or self.d):
            return self
        return Scalar(self.a, self.b, -self.c, -self.d)

    def real(self) -> "Scalar":
        return Scalar(self.a, self.b)

    def imag(self) -> "Scalar":
        return Scalar(self.c, self.d)

    def norm2(self) -> "Scalar":
        """z·conj(z), an element of Q(√2)."""
        p, q = _rmul(self.a, self.b, self.a, self.b)
        r, s = _rmul(self.c, self.d, self.c, self.d)
        return Scalar(p + r, q + s)

    # -----------------------------
    # arithmetic
    # -----------------------------
    def __add__(self, other: ScalarLike) -> "Scalar":
        o = as_scalar(other)
        return Scalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = as_scalar(other)
        return Scalar(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return as_scalar(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = as_scalar(other)
        if self.is_rational():
            r = self.a
            if not r:
                return ZERO
            return Scalar(r * o.a, r * o.b, r * o.c, r * o.d)
        if o.is_rational():
            r = o.a
            if not r:
                return ZERO
            return Scalar(r * self.a, r * self.b, r * self.c, r * self.d)
        # (x1 + i y1)(x2 + i y2)
        xx = _rmul(self.a, self.b, o.a, o.b)
        yy = _rmul(self.c, self.d, o.c, o.d)
        xy = _rmul(self.a, self.b, o.c, o.d)
        yx = _rmul(self.c, self.d, o.a, o.b)
        return Scalar(xx[0] - yy[0], xx[1] - yy[1], xy[0] + yx[0], xy[1] + yx[1])

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ScalarError("division by zero scalar")
        if self.is_rational():
            return Scalar(1 / self.a)
        n = self.norm2()
        den = n.a * n.a - 2 * n.b * n.b
        n_inv = Scalar(n.a / den, -n.b / den)
        return self.conj() * n_inv

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        return self * as_scalar(other).inv()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return as_scalar(other) * self.inv()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -----------------------------
    # comparison
    # -----------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.a == other and not (self.b or self.c or self.d)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def sign(self) -> int:
        """Exact sign of a real scalar."""
        if not self.is_real():
            raise ScalarError(f"sign of non-real scalar {self}")
        return _rsign(self.a, self.b)

    def abs(self) -> "Scalar":
        return -self if self.sign() < 0 else self

    # -----------------------------
    # float shadow
    # -----------------------------
    def to_complex(self) -> complex:
        r2 = 2 ** 0.5
        return complex(float(self.a) + float(self.b) * r2, float(self.c) + float(self.d) * r2)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)})"


def as_scalar(x: ScalarLike) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(Fraction(x))
    raise ScalarError(f"cannot interpret {x!r} as an exact scalar")


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(c=Fraction(1))
SQRT2 = Scalar(b=Fraction(1))
HALF = Scalar(Fraction(1, 2))
INV_SQRT2 = Scalar(b=Fraction(1, 2))


def format_scalar(x: Scalar) -> str:
    parts = []
    for val, unit in ((x.a, ""), (x.b, "√2"), (x.c, "i"), (x.d, "i√2")):
        if val:
            parts.append(f"{val}{unit}" if unit == "" else f"{val}*{unit}")
    return " + ".join(parts) if parts else "0"


# -----------------------------
# exact roots
# -----------------------------

def _int_root(n: int, k: int) -> Optional[int]:
    if n < 0:
        return None
    if n in (0, 1):
        return n
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo if lo ** k == n else None


def rational_root(q: Rational, k: int) -> Optional[Fraction]:
    """Exact k-th root of a non-negative rational, or None if irrational."""
    q = _q(q)
    if q < 0:
        return None
    num = _int_root(q.numerator, k)
    den = _int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def sqrt_real(x: ScalarLike) -> Scalar:
    """
    Exact square root of a non-negative element of Q(√2).

    Handles r² and r²·2 (giving r√2); other inputs raise ScalarError.
    """
    x = as_scalar(x)
    if not x.is_real() or x.sign() < 0:
        raise ScalarError(f"square root of {format_scalar(x)} is not real")
    if x.is_zero():
        return ZERO
    if x.b == 0:
        r = rational_root(x.a, 2)
        if r is not None:
            return Scalar(r)
        r = rational_root(x.a / 2, 2)
        if r is not None:
            return Scalar(b=r)
    else:
        # (u + v√2)² = u² + 2v² + 2uv√2, so u² solves t² - a·t + b²/2 = 0
        disc = x.a * x.a - 2 * x.b * x.b
        s = rational_root(disc, 2) if disc >= 0 else None
        if s is not None:
            for t in ((x.a + s) / 2, (x.a - s) / 2):
                u = rational_root(t, 2)
                if u:
                    root = Scalar(u, x.b / (2 * u))
                    return -root if root.sign() < 0 else root
    raise ScalarError(f"square root of {format_scalar(x)} is outside Q(√2)")

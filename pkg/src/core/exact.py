"""Exact scalars: rationals and quadratic surds.

``Fraction`` is the exact scalar for curvature, turns and ratios. Irrational
constants (the sharp isoperimetric constants, the growth root of the layer
recurrence, the triangulation bound) live in a quadratic field and are held
as ``QuadraticSurd`` values a + b*sqrt(d), which compare exactly.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def _square_part(d: int) -> tuple[int, int]:
    """Split d = k*k * r with r square-free; returns (k, r)."""
    k, r = 1, d
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            k *= f
        f += 1
    return k, r


class QuadraticSurd:
    """Element a + b*sqrt(d) of Q(sqrt d) with exact arithmetic and order."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 0):
        if d < 0:
            raise ValueError("radicand must be non-negative")
        a, b = Fraction(a), Fraction(b)
        if d == 0 or b == 0:
            a, b, d = a, Fraction(0), 0
        else:
            k, r = _square_part(d)
            b *= k
            d = r
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def sqrt(cls, r: Rational) -> "QuadraticSurd":
        """Exact square root of a non-negative rational."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(n/m) = sqrt(n*m) / m
        return cls(0, Fraction(1, r.denominator), r.numerator * r.denominator)

    # Arithmetic

    def _coerce(self, other: object) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if self.d and other.d and self.d != other.d:
                raise ValueError(
                    f"mixed radicands {self.d} and {other.d} are not supported"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other)
        return NotImplemented  # type: ignore[return-value]

    def _radicand(self, other: "QuadraticSurd") -> int:
        return self.d or other.d

    def __add__(self, other: object) -> "QuadraticSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._radicand(o))

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other: object) -> "QuadraticSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "QuadraticSurd":
        return (-self) + other

    def __mul__(self, other: object) -> "QuadraticSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._radicand(o)
        return QuadraticSurd(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d; zero only for the zero element."""
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other: object) -> "QuadraticSurd":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        return QuadraticSurd(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other: object) -> "QuadraticSurd":
        return QuadraticSurd(Fraction(other)) / self  # type: ignore[arg-type]

    def __pow__(self, n: int) -> "QuadraticSurd":
        result = QuadraticSurd(1)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # Order

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def _cmp(self, other: object) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare surd with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (QuadraticSurd, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: object) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: object) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: object) -> bool:
        return self._cmp(other) >= 0

    # Views

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def to_dict(self) -> dict:
        return {
            "rational": fraction_to_dict(self.a),
            "coefficient": fraction_to_dict(self.b),
            "radicand": self.d,
            "approx": float(self),
        }

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadraticSurd({self.a})"
        return f"QuadraticSurd({self.a} + {self.b}*sqrt({self.d}))"


def fraction_to_dict(x: Rational) -> dict:
    x = Fraction(x)
    return {"numerator": x.numerator, "denominator": x.denominator}


def ratio(num: int, den: int) -> Fraction:
    """Exact ratio; raises ZeroDivisionError on an empty denominator."""
    return Fraction(num, den)

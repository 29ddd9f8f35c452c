"""Exact arithmetic over the real field Q(sqrt2, sqrt3).

Every scalar handled by the geometry code is

    q0 + q1*sqrt(2) + q2*sqrt(3) + q3*sqrt(6)

with arbitrary-precision rational coefficients.  The four basis elements
are linearly independent over Q, so the representation is unique and
equality is component-wise.  The field is closed under +, -, * and /
(sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, sqrt3*sqrt6 = 3*sqrt2), and
it contains every coordinate this package needs, including values such as
1 - sqrt2 and 2*sqrt3 - sqrt6/2.

Signs are decided exactly, never by floating point: write
x = A + B*sqrt3 with A, B in Q(sqrt2); if A and B disagree in sign,
compare A^2 against 3*B^2 inside Q(sqrt2), and settle Q(sqrt2) signs the
same way by comparing a^2 against 2*b^2 over the plain rationals.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

RatLike = Union[int, Fraction]


def _sign(a: Fraction) -> int:
    return (a > 0) - (a < 0)


def _sign_q2(a: Fraction, b: Fraction) -> int:
    """Exact sign of a + b*sqrt(2) for rational a, b."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # Opposite signs: |a| vs |b|*sqrt2 decided by squaring.
    d = a * a - 2 * b * b
    if d == 0:
        raise ArithmeticError("sqrt(2) is irrational; a^2 == 2*b^2 is impossible")
    return sa if d > 0 else sb


class QuadExt:
    """An element of Q(sqrt2, sqrt3) in canonical coordinates."""

    __slots__ = ("q0", "q1", "q2", "q3")

    def __init__(self, q0: RatLike = 0, q1: RatLike = 0, q2: RatLike = 0, q3: RatLike = 0):
        object.__setattr__(self, "q0", Fraction(q0))
        object.__setattr__(self, "q1", Fraction(q1))
        object.__setattr__(self, "q2", Fraction(q2))
        object.__setattr__(self, "q3", Fraction(q3))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, value: RatLike) -> "QuadExt":
        return cls(Fraction(value))

    @classmethod
    def sqrt2(cls) -> "QuadExt":
        return cls(0, 1, 0, 0)

    @classmethod
    def sqrt3(cls) -> "QuadExt":
        return cls(0, 0, 1, 0)

    @classmethod
    def sqrt6(cls) -> "QuadExt":
        return cls(0, 0, 0, 1)

    @staticmethod
    def _coerce(value) -> "QuadExt":
        if isinstance(value, QuadExt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a valid coordinate value")
        if isinstance(value, (int, Fraction)):
            return QuadExt(value)
        return NotImplemented  # type: ignore[return-value]

    # -- ring/field operations ----------------------------------------

    def __add__(self, other) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)

    __radd__ = __add__

    def __sub__(self, other) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.q0 - o.q0, self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3)

    def __rsub__(self, other) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.q0, self.q1, self.q2, self.q3
        b0, b1, b2, b3 = o.q0, o.q1, o.q2, o.q3
        return QuadExt(
            a0 * b0 + 2 * a1 * b1 + 3 * a2 * b2 + 6 * a3 * b3,
            a0 * b1 + a1 * b0 + 3 * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + 2 * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "QuadExt":
        """Galois conjugate sending sqrt2 to -sqrt2."""
        return QuadExt(self.q0, -self.q1, self.q2, -self.q3)

    def conj_sqrt3(self) -> "QuadExt":
        """Galois conjugate sending sqrt3 to -sqrt3."""
        return QuadExt(self.q0, self.q1, -self.q2, -self.q3)

    def inverse(self) -> "QuadExt":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        # Multiply by the three nontrivial Galois conjugates; the full
        # product is the rational field norm.
        partial = self.conj_sqrt2() * self.conj_sqrt3() * self.conj_sqrt2().conj_sqrt3()
        norm = self * partial
        if norm.q1 or norm.q2 or norm.q3:
            raise ArithmeticError("field norm must be rational")
        return partial * QuadExt(Fraction(1) / norm.q0)

    def __truediv__(self, other) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "QuadExt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "QuadExt":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadExt(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- exact sign and order -----------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1} of the real number this represents."""
        a0, a1 = self.q0, self.q1  # A = a0 + a1*sqrt2
        b0, b1 = self.q2, self.q3  # B = b0 + b1*sqrt2, x = A + B*sqrt3
        s_a = _sign_q2(a0, a1)
        s_b = _sign_q2(b0, b1)
        if s_b == 0:
            return s_a
        if s_a == 0 or s_a == s_b:
            return s_b
        # A and B*sqrt3 pull in opposite directions: compare A^2 vs 3*B^2
        # inside Q(sqrt2).
        d0 = a0 * a0 + 2 * a1 * a1 - 3 * (b0 * b0 + 2 * b1 * b1)
        d1 = 2 * a0 * a1 - 6 * b0 * b1
        s_d = _sign_q2(d0, d1)
        if s_d == 0:
            raise ArithmeticError("sqrt(3) does not lie in Q(sqrt2)")
        return s_a if s_d > 0 else s_b

    def __bool__(self) -> bool:
        return bool(self.q0 or self.q1 or self.q2 or self.q3)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.q0, self.q1, self.q2, self.q3) == (o.q0, o.q1, o.q2, o.q3)

    def __hash__(self) -> int:
        return hash((self.q0, self.q1, self.q2, self.q3))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self) -> "QuadExt":
        return -self if self.sign() < 0 else self

    # -- conversions ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not (self.q1 or self.q2 or self.q3)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.q0

    def to_decimal(self, prec: int = 30) -> Decimal:
        """Decimal approximation at the given precision (display only)."""
        with localcontext() as ctx:
            ctx.prec = prec + 10
            val = (
                Decimal(self.q0.numerator) / Decimal(self.q0.denominator)
                + Decimal(self.q1.numerator) / Decimal(self.q1.denominator) * Decimal(2).sqrt()
                + Decimal(self.q2.numerator) / Decimal(self.q2.denominator) * Decimal(3).sqrt()
                + Decimal(self.q3.numerator) / Decimal(self.q3.denominator) * Decimal(6).sqrt()
            )
            ctx.prec = prec
            return +val

    def __float__(self) -> float:
        return float(self.to_decimal(25))

    def __repr__(self) -> str:
        parts = []
        for coeff, tag in ((self.q0, ""), (self.q1, "*sqrt2"), (self.q2, "*sqrt3"), (self.q3, "*sqrt6")):
            if coeff == 0:
                continue
            text = f"{coeff}{tag}" if tag else f"{coeff}"
            if parts:
                parts.append("+" if coeff > 0 else "-")
                text = f"{abs(coeff)}{tag}" if tag else f"{abs(coeff)}"
            parts.append(text)
        if not parts:
            return "QuadExt(0)"
        return f"QuadExt({' '.join(parts)})"

    __str__ = __repr__


ZERO = QuadExt(0)
ONE = QuadExt(1)
SQRT2 = QuadExt.sqrt2()
SQRT3 = QuadExt.sqrt3()
SQRT6 = QuadExt.sqrt6()

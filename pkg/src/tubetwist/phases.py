"""Exact unit-circle scalars.

A :class:`Phase` stands for ``exp(2*pi*i*q)`` with ``q`` a rational number
reduced into ``[0, 1)``. Products add exponents, so every cocycle computation
with root-of-unity values is carried out without rounding.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Number, Rational

__all__ = ["Phase", "ONE", "phase", "phase_mul", "principal_sqrt", "to_complex", "conj", "inverse"]


class Phase:
    """exp(2*pi*i*num/den), stored reduced with 0 <= num < den."""

    __slots__ = ("num", "den")

    def __init__(self, num: int | Rational = 0, den: int = 1):
        if isinstance(num, Rational) and not isinstance(num, int):
            num, den = num.numerator, num.denominator * den
        num, den = int(num), int(den)
        if den <= 0:
            raise ValueError("phase denominator must be positive")
        g = math.gcd(num, den)
        num //= g
        den //= g
        self.num = num % den
        self.den = den

    @classmethod
    def from_str(cls, text: str) -> Phase:
        """Parse ``"num/den"`` (or a bare integer) as an exponent."""
        return cls(Fraction(text.strip()))

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, Phase):
            d = self.den * other.den // math.gcd(self.den, other.den)
            return Phase(self.num * (d // self.den) + other.num * (d // other.den), d)
        if isinstance(other, Number):
            return self.to_complex() * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Phase):
            return self * other.conjugate()
        if isinstance(other, Number):
            return self.to_complex() / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Number):
            return other * self.conjugate().to_complex()
        return NotImplemented

    def __pow__(self, k: int) -> Phase:
        return Phase(self.num * k, self.den)

    def conjugate(self) -> Phase:
        return Phase(-self.num, self.den)

    inverse = conjugate

    def sqrt(self) -> Phase:
        return Phase(self.num, 2 * self.den)

    def to_complex(self) -> complex:
        # exact values at quarter turns so that sign twists of float data stay exact
        q4 = 4 * self.num
        if q4 % self.den == 0:
            return (1 + 0j, 1j, -1 + 0j, -1j)[q4 // self.den]
        return cmath.exp(2j * math.pi * self.num / self.den)

    __complex__ = to_complex

    def is_one(self) -> bool:
        return self.num == 0

    def __eq__(self, other):
        if isinstance(other, Phase):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Number):
            return self.to_complex() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Phase({self.num}/{self.den})"

    def __str__(self):
        return f"{self.num}/{self.den}"


ONE = Phase(0)


def phase(q) -> Phase:
    """Build a Phase from an exponent given as int, Fraction, or "num/den" string."""
    if isinstance(q, Phase):
        return q
    if isinstance(q, str):
        return Phase.from_str(q)
    return Phase(Fraction(q))


def phase_mul(p: Phase, q: Phase) -> Phase:
    return p * q


def principal_sqrt(p: Phase) -> Phase:
    """Square root on the principal branch: exponent q/2 for q in [0, 1)."""
    return p.sqrt()


def to_complex(p) -> complex:
    return p.to_complex() if isinstance(p, Phase) else complex(p)


def conj(x):
    """Complex conjugate for Phase and ordinary numbers alike."""
    return x.conjugate()


def inverse(x):
    if isinstance(x, Phase):
        return x.conjugate()
    return 1 / x

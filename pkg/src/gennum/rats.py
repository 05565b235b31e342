"""Exact scalars: rationals and Gaussian rationals.

Coefficients of generalized numbers live in Q (mode R) or Q(i) (mode C).
A Coeff is a pair of Fractions (re, im); mode R simply keeps im == 0.
The squared modulus is always an exact rational, which is what every
germ-level predicate downstream actually consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Rat = Fraction

RatLike = Union[int, Fraction]


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Coeff:
    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "Coeff":
        if isinstance(x, Coeff):
            return x
        if isinstance(x, complex):
            raise TypeError("floats are not exact; build Coeffs from rationals")
        return Coeff(rat(x))

    def __add__(self, o: "Coeff") -> "Coeff":
        return Coeff(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "Coeff") -> "Coeff":
        return Coeff(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "Coeff":
        return Coeff(-self.re, -self.im)

    def __mul__(self, o: "Coeff") -> "Coeff":
        return Coeff(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self) -> "Coeff":
        return Coeff(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inv(self) -> "Coeff":
        a2 = self.abs2()
        if a2 == 0:
            raise ZeroDivisionError("inverse of zero coefficient")
        return Coeff(self.re / a2, -self.im / a2)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def abs_exact(self):
        """|c| as an exact rational when representable, else None."""
        if self.im == 0:
            return abs(self.re)
        return rational_sqrt(self.abs2())

    def sort_key(self):
        return (self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


ZERO = Coeff(Fraction(0))
ONE = Coeff(Fraction(1))

"""Exact Gaussian-rational arithmetic.

A GaussScalar is a complex number a + bi whose real and imaginary parts are
rationals, stored as Fraction so normalization (lowest terms, positive
denominator) and structural equality come for free.  This is the coefficient
field for every computation in the package: all identity checks are exact,
with tolerance zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class GaussScalar:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(re: Rational = 0, im: Rational = 0) -> "GaussScalar":
        return GaussScalar(Fraction(re), Fraction(im))

    @staticmethod
    def i() -> "GaussScalar":
        return GaussScalar(Fraction(0), Fraction(1))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussScalar":
        return GaussScalar(self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        return GaussScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussScalar(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        return GaussScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussScalar":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero GaussScalar")
        return GaussScalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {_imag_str(abs(self.im))}"

    def __repr__(self) -> str:
        return f"GaussScalar({self.re!r}, {self.im!r})"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _coerce(x) -> GaussScalar:
    if isinstance(x, GaussScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussScalar(Fraction(x), Fraction(0))
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussScalar")


GS_ZERO = GaussScalar(Fraction(0), Fraction(0))
GS_ONE = GaussScalar(Fraction(1), Fraction(0))
GS_I = GaussScalar(Fraction(0), Fraction(1))

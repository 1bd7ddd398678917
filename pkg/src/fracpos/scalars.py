"""Exact Gaussian-rational scalars.

All symbolic computation in the package runs over numbers a + b*i with
rational a, b, so equality tests and certificate residuals are exact.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

try:  # gmpy2 rationals are drop-in and much faster than fractions.Fraction
    from gmpy2 import mpq as _RAT
except ImportError:  # pragma: no cover
    _RAT = Fraction


def _coerce(value):
    if isinstance(value, numbers.Rational):
        return _RAT(value)
    if isinstance(value, str):
        return _RAT(Fraction(value))
    raise TypeError(f"cannot build an exact rational from {value!r}")


class GaussianRational:
    """Immutable complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _coerce(re))
        object.__setattr__(self, "im", _coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates and conversions --------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    @staticmethod
    def _lift(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, numbers.Rational):
            return GaussianRational(value)
        return NotImplemented

    # -- printing ---------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return self.text()

    def text(self) -> str:
        """Render as `re+im*i` or `re-|im|*i`, always with both parts."""
        if self.im >= 0:
            return f"{self.re}+{self.im}*i"
        return f"{self.re}-{-self.im}*i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gaussian(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)

"""
Scalar backends: exact Gaussian rationals and double-precision complex numbers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..core.errors import BackendMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GaussianRational:
    """Complex number with rational real and imaginary parts"""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> 'GaussianRational':
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise BackendMismatch(f"cannot use {type(value).__name__} {value!r} as an exact scalar")

    def _other(self, other):
        if isinstance(other, (float, complex)):
            raise BackendMismatch("mixing exact and floating scalars requires an explicit to_numeric()")
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        return GaussianRational.coerce(other)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("division by exact zero")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return GaussianRational(1) / (self ** -exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def __complex__(self):
        return self.to_complex()

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, exact"""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = '+' if self.im > 0 else '-'
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = Union[GaussianRational, complex]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def exact(re, im=0) -> GaussianRational:
    """Build an exact scalar from anything Fraction accepts ('3/7', 2, Fraction)"""
    return GaussianRational(Fraction(re), Fraction(im))


def is_exact(value) -> bool:
    return isinstance(value, GaussianRational)


def to_numeric(value) -> complex:
    """The only sanctioned conversion from the exact backend to the floating one"""
    if isinstance(value, GaussianRational):
        return value.to_complex()
    return complex(value)


def conjugate(value):
    if isinstance(value, GaussianRational):
        return value.conjugate()
    return complex(value).conjugate()


def zero_like(value):
    return ZERO if isinstance(value, GaussianRational) else 0j


def one_like(value):
    return ONE if isinstance(value, GaussianRational) else 1 + 0j


def is_zero(value, tol: float = 0.0) -> bool:
    if isinstance(value, GaussianRational):
        return not value
    return abs(value) <= tol


def rationalize(value: complex, max_denominator: int) -> GaussianRational:
    """Closest Gaussian rational with bounded denominators, for exact verification of numeric roots"""
    value = complex(value)
    return GaussianRational(Fraction(value.real).limit_denominator(max_denominator),
                            Fraction(value.imag).limit_denominator(max_denominator))

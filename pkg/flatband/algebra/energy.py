"""
Univariate polynomials in the energy E, their gcd and root extraction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence

import numpy as np

from ..core.errors import BackendMismatch, EmptyInput, ZeroPolynomial
from .scalars import ONE, ZERO, GaussianRational, is_exact, rationalize, to_numeric

logger = logging.getLogger(__name__)

NEWTON_STEPS = 8


class EnergyPoly:
    """c_0 + c_1 E + ... + c_m E^m with a nonzero leading coefficient"""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients: Sequence = ()):
        coefficients = list(coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients = tuple(coefficients)

    @classmethod
    def from_terms(cls, terms: dict) -> 'EnergyPoly':
        """Build from {power: coeff}; powers are ints or 1-tuples"""
        powers = {(p[0] if isinstance(p, tuple) else p): c for p, c in terms.items()}
        if any(p < 0 for p in powers):
            raise ValueError("energy polynomials carry no negative powers")
        if not powers:
            return cls()
        zero = ZERO if all(is_exact(c) for c in powers.values()) else 0j
        return cls([powers.get(p, zero) for p in range(max(powers) + 1)])

    @classmethod
    def linear_root(cls, root) -> 'EnergyPoly':
        """E - root"""
        return cls([-root, ONE if is_exact(root) else 1 + 0j])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial"""
        return len(self.coefficients) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self):
        return self.coefficients[-1]

    def _zero(self):
        return ZERO if self.exact else 0j

    def evaluate(self, energy):
        if self.is_zero():
            return energy * 0
        if not self.exact or not is_exact(energy):
            energy = to_numeric(energy)
            total = 0j
            for coeff in reversed(self.coefficients):
                total = total * energy + to_numeric(coeff)
            return total
        total = ZERO
        for coeff in reversed(self.coefficients):
            total = total * energy + coeff
        return total

    __call__ = evaluate

    def __add__(self, other: 'EnergyPoly') -> 'EnergyPoly':
        size = max(len(self.coefficients), len(other.coefficients))
        zero = self._zero()
        a = self.coefficients + (zero,) * (size - len(self.coefficients))
        b = other.coefficients + (zero,) * (size - len(other.coefficients))
        return EnergyPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> 'EnergyPoly':
        return EnergyPoly([-c for c in self.coefficients])

    def __sub__(self, other: 'EnergyPoly') -> 'EnergyPoly':
        return self + (-other)

    def __mul__(self, other) -> 'EnergyPoly':
        if not isinstance(other, EnergyPoly):
            return EnergyPoly([c * other for c in self.coefficients])
        if self.is_zero() or other.is_zero():
            return EnergyPoly()
        product = [self._zero()] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for k, b in enumerate(other.coefficients):
                product[i + k] = product[i + k] + a * b
        return EnergyPoly(product)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, EnergyPoly):
            return self.coefficients == other.coefficients
        return NotImplemented

    __hash__ = None

    def divmod(self, divisor: 'EnergyPoly'):
        """Long division over the coefficient field"""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero energy polynomial")
        remainder = list(self.coefficients)
        quotient = [self._zero()] * max(len(remainder) - divisor.degree, 0)
        lead = divisor.leading()
        while len(remainder) - 1 >= divisor.degree and remainder:
            shift = len(remainder) - 1 - divisor.degree
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for i, c in enumerate(divisor.coefficients):
                remainder[shift + i] = remainder[shift + i] - factor * c
            remainder.pop()
            while remainder and remainder[-1] == 0:
                remainder.pop()
        return EnergyPoly(quotient), EnergyPoly(remainder)

    def __mod__(self, divisor: 'EnergyPoly') -> 'EnergyPoly':
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: 'EnergyPoly') -> 'EnergyPoly':
        return self.divmod(divisor)[0]

    def derivative(self) -> 'EnergyPoly':
        return EnergyPoly([c * k for k, c in enumerate(self.coefficients)][1:])

    def monic(self) -> 'EnergyPoly':
        if self.is_zero():
            return self
        lead = self.leading()
        return EnergyPoly([c / lead for c in self.coefficients])

    def to_numeric(self) -> 'EnergyPoly':
        return EnergyPoly([to_numeric(c) for c in self.coefficients])

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self.coefficients), default=0.0)

    def __repr__(self):
        return f"EnergyPoly({list(self.coefficients)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for power in range(self.degree, -1, -1):
            coeff = self.coefficients[power]
            if coeff == 0:
                continue
            monomial = '' if power == 0 else ('E' if power == 1 else f'E^{power}')
            if not monomial:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(monomial)
            else:
                parts.append(f"({coeff})*{monomial}")
        return " + ".join(parts)


def gcd_energy(polys: Iterable[EnergyPoly]) -> EnergyPoly:
    """Monic gcd over the Gaussian-rational field; gcd(p, 0) is monic p"""
    polys = list(polys)
    if not polys:
        raise EmptyInput("gcd of an empty set of energy polynomials")
    for p in polys:
        if not p.exact:
            raise BackendMismatch("gcd_energy needs exact coefficients")
    result = EnergyPoly()
    for p in polys:
        a, b = result, p
        while not b.is_zero():
            a, b = b, a % b
        result = a.monic()
        if result.degree == 0:
            break
    return result


def _newton(poly: EnergyPoly, root: complex) -> complex:
    derivative = poly.derivative()
    best, best_residual = root, abs(poly.evaluate(root))
    for _ in range(NEWTON_STEPS):
        slope = derivative.evaluate(root)
        if slope == 0:
            break
        root = root - poly.evaluate(root) / slope
        residual = abs(poly.evaluate(root))
        if residual < best_residual:
            best, best_residual = root, residual
    return best


def numeric_roots(poly: EnergyPoly) -> List[complex]:
    """Companion-matrix roots refined by Newton steps"""
    if poly.degree < 1:
        return []
    numeric = poly.to_numeric()
    # numpy.roots wants the highest power first
    roots = np.roots([complex(c) for c in reversed(numeric.coefficients)])
    return [_newton(numeric, complex(r)) for r in roots]


def _gaussian_integer_form(poly: EnergyPoly) -> EnergyPoly:
    """Scale by the lcm of all denominators so every coefficient lies in Z[i]"""
    scale = 1
    for c in poly.coefficients:
        scale = math.lcm(scale, c.re.denominator, c.im.denominator)
    return poly * GaussianRational(scale)


def _exact_candidate(poly: EnergyPoly, root: complex):
    """A root a/b in lowest terms over Z[i] has b | leading coefficient, so lead*root is a Gaussian integer"""
    lead = _gaussian_integer_form(poly).leading()
    scaled = to_numeric(lead) * root
    numerator = GaussianRational(round(scaled.real), round(scaled.imag))
    candidate = numerator / lead
    if poly.evaluate(candidate) == 0:
        return candidate
    return None


def _exact_sqrt(value: GaussianRational):
    if not value:
        return ZERO
    guess = complex(to_numeric(value)) ** 0.5
    for bound in (10 ** 3, 10 ** 6, 10 ** 9):
        root = rationalize(guess, bound)
        if root * root == value:
            return root
    return None


def _quadratic_roots(poly: EnergyPoly):
    c, b, a = poly.coefficients
    root = _exact_sqrt(b * b - 4 * a * c)
    if root is None:
        return None
    return [(-b + root) / (2 * a), (-b - root) / (2 * a)]


@dataclass
class RootSet:
    """Exact roots with multiplicity plus every distinct root numerically"""

    exact: List[GaussianRational] = field(default_factory=list)
    numeric: List[complex] = field(default_factory=list)
    remainder: EnergyPoly = None


def squarefree_part(poly: EnergyPoly) -> EnergyPoly:
    """Monic p / gcd(p, p'): the same roots, each simple"""
    if poly.degree < 1:
        return poly.monic()
    return (poly // gcd_energy([poly, poly.derivative()])).monic()


def _multiplicity(poly: EnergyPoly, root: GaussianRational) -> int:
    factor = EnergyPoly.linear_root(root)
    count = 0
    quotient, rest = poly.divmod(factor)
    while rest.is_zero() and quotient.degree >= 0:
        count += 1
        poly = quotient
        quotient, rest = poly.divmod(factor)
    return count


def roots_energy(poly: EnergyPoly) -> RootSet:
    """Exact Gaussian-rational roots where they exist and all roots numerically"""
    if poly.is_zero():
        raise ZeroPolynomial("roots of the zero energy polynomial are undefined")
    if not poly.exact:
        return RootSet([], numeric_roots(poly), poly)

    # numpy loses repeated roots to eps**(1/m) error, so search the squarefree part
    distinct: List[GaussianRational] = []
    remaining = squarefree_part(poly)
    progress = True
    while remaining.degree >= 1 and progress:
        progress = False
        if remaining.degree == 1:
            distinct.append(-remaining.coefficients[0] / remaining.coefficients[1])
            remaining = EnergyPoly([ONE])
            break
        for candidate in numeric_roots(remaining):
            root = _exact_candidate(remaining, candidate)
            if root is not None:
                distinct.append(root)
                remaining, _ = remaining.divmod(EnergyPoly.linear_root(root))
                progress = True
                break
    if remaining.degree == 2:
        pair = _quadratic_roots(remaining)
        if pair is not None:
            distinct.extend(pair)
            remaining = EnergyPoly([ONE])

    distinct.sort(key=lambda r: (r.re, r.im))
    found = [root for root in distinct for _ in range(_multiplicity(poly, root))]
    numeric = [to_numeric(r) for r in distinct]
    numeric.extend(numeric_roots(remaining))
    logger.debug(f"Roots of degree-{poly.degree} polynomial: {len(found)} exact, "
                 f"{remaining.degree} distinct left numeric")
    return RootSet(found, numeric, remaining)


def residual_bound(poly: EnergyPoly) -> float:
    return 1e-9 * (1 + poly.max_abs_coefficient())

"""
Determinants of Laurent-polynomial matrices and the split of det(h(z) - E)
into z-monomial coefficients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

from ..core.errors import NonSquare
from .energy import EnergyPoly
from .laurent import Exponent, LaurentPoly
from .scalars import ONE

logger = logging.getLogger(__name__)

COFACTOR_LIMIT = 6


def _check_square(matrix: Sequence[Sequence[LaurentPoly]]) -> int:
    size = len(matrix)
    if size == 0:
        raise NonSquare("determinant of an empty matrix")
    for row in matrix:
        if len(row) != size:
            raise NonSquare(f"matrix has {size} rows but a row of length {len(row)}")
    return size


def _cofactor(matrix, size: int, nvars: int, one) -> LaurentPoly:
    """Laplace expansion row by row, memoized on the set of used columns"""
    memo: Dict[int, LaurentPoly] = {}

    def expand(used: int) -> LaurentPoly:
        row = bin(used).count('1')
        if row == size:
            return LaurentPoly.constant(nvars, one)
        if used in memo:
            return memo[used]
        total = LaurentPoly.zero(nvars)
        position = 0
        for col in range(size):
            if used & (1 << col):
                continue
            entry = matrix[row][col]
            if not entry.is_zero():
                minor = expand(used | (1 << col))
                term = entry * minor
                total = total - term if position % 2 else total + term
            position += 1
        memo[used] = total
        return total

    return expand(0)


def _bareiss(matrix, size: int, nvars: int) -> LaurentPoly:
    """Fraction-free elimination; every division is exact in the Laurent ring"""
    rows = [list(row) for row in matrix]
    sign = 1
    previous = LaurentPoly.constant(nvars, ONE)
    for k in range(size - 1):
        if rows[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not rows[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(nvars)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                numerator = pivot * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = numerator.divide_exact(previous)
            rows[i][k] = LaurentPoly.zero(nvars)
        previous = pivot
    det = rows[size - 1][size - 1]
    return det if sign > 0 else -det


def det_laurent(matrix: Sequence[Sequence[LaurentPoly]], method: str = 'auto') -> LaurentPoly:
    """
    Exact determinant of a square matrix of Laurent polynomials.

    'auto' expands by cofactors up to size 6 and for floating entries, and
    uses fraction-free elimination above that.
    """
    size = _check_square(matrix)
    nvars = matrix[0][0].nvars
    exact = all(entry.exact for row in matrix for entry in row)
    if method == 'auto':
        method = 'cofactor' if size <= COFACTOR_LIMIT or not exact else 'bareiss'
    if method == 'cofactor':
        return _cofactor(matrix, size, nvars, ONE if exact else 1 + 0j)
    if method == 'bareiss':
        return _bareiss(matrix, size, nvars)
    raise ValueError(f"unknown determinant method: {method}")


@dataclass(frozen=True)
class CharSplit:
    """det(h(z) - E) = sum over alpha of z^alpha * parts[alpha](E)"""

    d: int
    size: int
    parts: Dict[Exponent, EnergyPoly]

    def reassemble(self) -> LaurentPoly:
        """The characteristic determinant as a polynomial in (z, E)"""
        terms = {}
        for alpha, poly in self.parts.items():
            for power, coeff in enumerate(poly.coefficients):
                if coeff != 0:
                    terms[alpha + (power,)] = coeff
        return LaurentPoly(self.d + 1, terms)

    def evaluate(self, z: Sequence, energy):
        """E may be zero; only the z components must be nonzero"""
        coefficients = {alpha: poly.evaluate(energy) for alpha, poly in self.parts.items()}
        return LaurentPoly(self.d, coefficients).evaluate(z)

    def constant_part(self) -> EnergyPoly:
        return self.parts.get((0,) * self.d, EnergyPoly())


def characteristic_matrix(entries: Sequence[Sequence[LaurentPoly]], d: int) -> List[List[LaurentPoly]]:
    """h(z) - E*I with E adjoined as the last variable"""
    energy = LaurentPoly.variable(d + 1, d)
    if not all(entry.exact for row in entries for entry in row):
        energy = energy.to_numeric()
    size = len(entries)
    return [
        [entries[i][j].extend(1) - (energy if i == j else 0) for j in range(size)]
        for i in range(size)
    ]


def char_split(fiber) -> CharSplit:
    """Group det(h(z) - E*I) by monomials in z"""
    matrix = characteristic_matrix(fiber.entries, fiber.d)
    det = det_laurent(matrix)
    parts = {alpha: EnergyPoly.from_terms(terms) for alpha, terms in det.collect(fiber.d).items()}
    logger.debug(f"Characteristic determinant splits into {len(parts)} z-monomials")
    return CharSplit(fiber.d, fiber.size, parts)

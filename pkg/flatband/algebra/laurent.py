"""
Multivariate Laurent polynomials over the exact or the floating scalar backend.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from ..core.errors import RankMismatch, ZeroComponent
from .scalars import ONE, ZERO, GaussianRational, conjugate, is_exact, to_numeric

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def _add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Finite sum of coefficient * z^alpha with alpha in Z^nvars"""

    __slots__ = ('nvars', 'terms')

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] = None):
        self.nvars = nvars
        canonical: Dict[Exponent, object] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise RankMismatch(f"exponent {exponent} does not have {nvars} components")
            if coeff == 0:
                continue
            canonical[exponent] = coeff
        self.terms = canonical

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, value) -> 'LaurentPoly':
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, nvars: int, exponent: Sequence[int], coeff=ONE) -> 'LaurentPoly':
        return cls(nvars, {tuple(exponent): coeff})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> 'LaurentPoly':
        exponent = [0] * nvars
        exponent[index] = power
        return cls.monomial(nvars, exponent)

    @classmethod
    def zero(cls, nvars: int) -> 'LaurentPoly':
        return cls(nvars)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), ZERO if self.exact else 0j)

    def support(self) -> list:
        return sorted(self.terms)

    def leading_exponent(self) -> Exponent:
        """Lexicographically largest exponent (a monomial order on Z^n)"""
        return max(self.terms)

    def trailing_exponent(self) -> Exponent:
        return min(self.terms)

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> 'LaurentPoly':
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise RankMismatch(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return LaurentPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exponent, coeff in other.terms.items():
            terms[exponent] = terms[exponent] + coeff if exponent in terms else coeff
        return LaurentPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        other = self._coerce(other)
        terms: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponent = _add_exponents(e1, e2)
                product = c1 * c2
                terms[exponent] = terms[exponent] + product if exponent in terms else product
        return LaurentPoly(self.nvars, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor) -> 'LaurentPoly':
        return LaurentPoly(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def shift(self, exponent: Sequence[int]) -> 'LaurentPoly':
        """Multiply by the monomial z^exponent"""
        return LaurentPoly(self.nvars, {_add_exponents(e, tuple(exponent)): c for e, c in self.terms.items()})

    def __pow__(self, power: int):
        if power < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (exponent, coeff), = self.terms.items()
            inverse = LaurentPoly.monomial(self.nvars, [-e for e in exponent], 1 / coeff)
            return inverse ** (-power)
        result = LaurentPoly.constant(self.nvars, ONE if self.exact else 1 + 0j)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, GaussianRational, complex, float)):
            return self == LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    __hash__ = None

    def divide_exact(self, divisor: 'LaurentPoly') -> 'LaurentPoly':
        """Quotient of an exact division; raises ArithmeticError when divisor does not divide self"""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exp = divisor.leading_exponent()
        lead_coeff = divisor.terms[lead_exp]
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        # quotient exponents lie in the box [min p - min q, max p - max q] componentwise
        low = [min(e[i] for e in self.terms) - min(e[i] for e in divisor.terms) for i in range(self.nvars)]
        high = [max(e[i] for e in self.terms) - max(e[i] for e in divisor.terms) for i in range(self.nvars)]
        remainder = self
        quotient_terms: Dict[Exponent, object] = {}
        while not remainder.is_zero():
            exponent = _sub_exponents(remainder.leading_exponent(), lead_exp)
            if any(e < lo or e > hi for e, lo, hi in zip(exponent, low, high)):
                raise ArithmeticError("polynomial division is not exact")
            coeff = remainder.terms[remainder.leading_exponent()] / lead_coeff
            quotient_terms[exponent] = coeff
            remainder = remainder - divisor.shift(exponent).scale(coeff)
        return LaurentPoly(self.nvars, quotient_terms)

    # -- evaluation and transforms ------------------------------------------

    def evaluate(self, point: Sequence):
        """Sum of coeff * z^alpha; a floating point forces the floating backend"""
        if len(point) != self.nvars:
            raise RankMismatch(f"point has {len(point)} components, expected {self.nvars}")
        if any(p == 0 for p in point):
            raise ZeroComponent(f"evaluation point {tuple(point)} has a zero component")
        numeric = not all(is_exact(p) for p in point) or not self.exact
        if numeric:
            point = [to_numeric(p) for p in point]
            total = 0j
            for exponent, coeff in self.terms.items():
                value = to_numeric(coeff)
                for base, e in zip(point, exponent):
                    value *= base ** e
                total += value
            return total
        total = ZERO
        for exponent, coeff in self.terms.items():
            value = coeff
            for base, e in zip(point, exponent):
                if e:
                    value = value * base ** e
            total = total + value
        return total

    def to_numeric(self) -> 'LaurentPoly':
        return LaurentPoly(self.nvars, {e: to_numeric(c) for e, c in self.terms.items()})

    def conjugate_reverse(self) -> 'LaurentPoly':
        """p*(z) = conj(p(1/conj z)); equals p on the torus iff p is real there"""
        return LaurentPoly(self.nvars, {tuple(-x for x in e): conjugate(c) for e, c in self.terms.items()})

    def collect(self, keep: int) -> Dict[Exponent, Dict[Exponent, object]]:
        """Group terms by their first `keep` exponent components"""
        groups: Dict[Exponent, Dict[Exponent, object]] = {}
        for exponent, coeff in self.terms.items():
            groups.setdefault(exponent[:keep], {})[exponent[keep:]] = coeff
        return groups

    def extend(self, extra: int) -> 'LaurentPoly':
        """Same polynomial viewed in nvars + extra variables"""
        return LaurentPoly(self.nvars + extra, {e + (0,) * extra: c for e, c in self.terms.items()})

    # -- display ------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exponent in sorted(self.terms, reverse=True):
            coeff = self.terms[exponent]
            monomial = '*'.join(
                f"z{i + 1}" if e == 1 else f"z{i + 1}^{e}"
                for i, e in enumerate(exponent) if e
            )
            if not monomial:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(monomial)
            else:
                parts.append(f"({coeff})*{monomial}")
        return " + ".join(parts)


def _check_rank(p: LaurentPoly, q: LaurentPoly):
    if p.nvars != q.nvars:
        raise RankMismatch(f"operands live in {p.nvars} and {q.nvars} variables")


def lp_arith(op: str, p: LaurentPoly, q=None) -> LaurentPoly:
    """Ring operations by name: add, sub, mul, negate, scale (q is then a scalar)"""
    if op == 'negate':
        return -p
    if op == 'scale':
        return p.scale(q)
    _check_rank(p, q)
    if op == 'add':
        return p + q
    if op == 'sub':
        return p - q
    if op == 'mul':
        return p * q
    raise ValueError(f"unknown Laurent polynomial operation: {op}")


def lp_eval(p: LaurentPoly, z: Sequence):
    return p.evaluate(z)


def lp_sum(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    total = LaurentPoly.zero(nvars)
    for p in polys:
        total = total + p
    return total

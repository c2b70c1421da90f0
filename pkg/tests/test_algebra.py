import cmath
from fractions import Fraction

import numpy as np
import pytest

from flatband.algebra.determinant import char_split, det_laurent
from flatband.algebra.energy import EnergyPoly, gcd_energy, residual_bound, roots_energy, squarefree_part
from flatband.algebra.laurent import LaurentPoly, lp_arith, lp_eval
from flatband.algebra.scalars import I, ONE, ZERO, GaussianRational, exact, rationalize, to_numeric
from flatband.core.errors import (
    BackendMismatch, EmptyInput, NonSquare, RankMismatch, ZeroComponent, ZeroPolynomial,
)
from flatband.spectral.floquet import build_fiber

from .conftest import potential, q


def z(power=1, nvars=1, index=0):
    return LaurentPoly.variable(nvars, index, power)


def one(nvars=1):
    return LaurentPoly.constant(nvars, ONE)


def random_poly(rng, nvars, terms=4):
    return LaurentPoly(nvars, {
        tuple(int(x) for x in rng.integers(-2, 3, size=nvars)): exact(int(rng.integers(-5, 6)), int(rng.integers(-2, 3)))
        for _ in range(terms)
    })


class TestScalars:
    def test_gaussian_arithmetic(self):
        a = exact(Fraction(1, 2), 1)
        assert a * a.conjugate() == exact(Fraction(5, 4))
        assert (a - a) == 0
        assert 1 / I == -I
        assert 2 - a == exact(Fraction(3, 2), -1)

    def test_mixing_backends_raises(self):
        with pytest.raises(BackendMismatch):
            ONE + 0.5
        with pytest.raises(BackendMismatch):
            1j * ONE

    def test_to_numeric_and_rationalize(self):
        assert to_numeric(exact(1, -2)) == 1 - 2j
        assert rationalize(0.25 - 0.5j, 100) == exact(Fraction(1, 4), Fraction(-1, 2))


class TestLaurent:
    def test_products(self):
        assert lp_arith('mul', z() + z(-1), z() - z(-1)) == z(2) - z(-2)
        p = one() + z(-1)
        assert lp_arith('mul', p, one() + z()) == 2 * one() + z() + z(-1)

    def test_additive_inverse_is_zero(self):
        p = z(3) + exact(2, 1) * z(-1)
        assert lp_arith('add', p, lp_arith('negate', p)).is_zero()

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            lp_arith('add', z(), LaurentPoly.variable(2, 0))

    def test_evaluation(self):
        p = z() + z(-1)
        assert lp_eval(p, [ONE]) == 2
        assert abs(lp_eval(p, [cmath.exp(2j * cmath.pi * 0.25)])) < 1e-15
        with pytest.raises(ZeroComponent):
            lp_eval(p, [0])

    def test_evaluation_is_multiplicative(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            p, r = random_poly(rng, 2), random_poly(rng, 2)
            point = [complex(*rng.normal(size=2)) + 0.5 for _ in range(2)]
            lhs = lp_eval(p * r, point)
            rhs = lp_eval(p, point) * lp_eval(r, point)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_ring_laws(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            a, b, c = (random_poly(rng, 2, 3) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a

    def test_exact_division(self):
        p = one() + z()
        assert (p * (z(2) - z(-1))).divide_exact(p) == z(2) - z(-1)
        with pytest.raises(ArithmeticError):
            (z(2) + one()).divide_exact(z() + one())

    def test_conjugate_reverse(self):
        p = one() + exact(0, 1) * z()
        assert p.conjugate_reverse() == one() - exact(0, 1) * z(-1)


class TestEnergy:
    def test_gcd(self):
        e2m1 = EnergyPoly([-ONE, ZERO, ONE])
        em1 = EnergyPoly([-ONE, ONE])
        assert gcd_energy([e2m1, em1]) == em1
        assert gcd_energy([EnergyPoly([ONE]), e2m1]) == EnergyPoly([ONE])
        assert gcd_energy([EnergyPoly([-2 * ONE, 2 * ONE]), EnergyPoly()]) == em1

    def test_gcd_divides_inputs(self):
        common = EnergyPoly([q('3/7'), -ONE]) * EnergyPoly([ONE, ZERO, ONE])
        inputs = [common * EnergyPoly([q(k), ONE]) for k in (1, 2, 5)]
        g = gcd_energy(inputs)
        assert g.degree == 3
        for p in inputs:
            assert (p % g).is_zero()

    def test_gcd_errors(self):
        with pytest.raises(EmptyInput):
            gcd_energy([])
        with pytest.raises(BackendMismatch):
            gcd_energy([EnergyPoly([1 + 0j, 1 + 0j])])

    def test_roots(self):
        assert roots_energy(EnergyPoly([-ONE, ONE])).exact == [ONE]
        assert sorted(roots_energy(EnergyPoly([ONE, ZERO, ONE])).exact, key=lambda r: r.im) == [-I, I]
        with pytest.raises(ZeroPolynomial):
            roots_energy(EnergyPoly())

    def test_repeated_roots_keep_their_multiplicity(self):
        factor = EnergyPoly([-q('1/997'), ONE])
        poly = factor * factor * factor * EnergyPoly([-q('-2/3'), ONE])
        roots = roots_energy(poly)
        assert roots.exact == [q('-2/3'), q('1/997'), q('1/997'), q('1/997')]
        assert roots.remainder.degree == 0
        assert squarefree_part(poly) == EnergyPoly([-q('-2/3'), ONE]) * factor

    def test_rational_root_next_to_irreducible_quadratic(self):
        poly = EnergyPoly([-q('3/7'), ONE]) * EnergyPoly([-2 * ONE, ZERO, ONE])
        roots = roots_energy(poly)
        assert q('3/7') in roots.exact
        assert len(roots.numeric) == 3
        for root in roots.numeric:
            assert abs(poly.evaluate(root)) <= residual_bound(poly)

    def test_division_and_derivative(self):
        p = EnergyPoly([ONE, 2 * ONE, ONE])
        quotient, remainder = p.divmod(EnergyPoly([ONE, ONE]))
        assert quotient == EnergyPoly([ONE, ONE]) and remainder.is_zero()
        assert p.derivative() == EnergyPoly([2 * ONE, 2 * ONE])


class TestDeterminant:
    def test_non_square(self):
        with pytest.raises(NonSquare):
            det_laurent([[one(), one()]])
        with pytest.raises(NonSquare):
            det_laurent([])

    def test_two_by_two(self):
        e = LaurentPoly.variable(2, 1)
        zz = LaurentPoly.variable(2, 0)
        c = LaurentPoly.constant
        m = [[c(2, q(1)) - e, c(2, ONE) + zz], [c(2, ONE) + zz ** -1, c(2, q(2)) - e]]
        expected = (c(2, q(1)) - e) * (c(2, q(2)) - e) - (c(2, 2 * ONE) + zz + zz ** -1)
        assert det_laurent(m) == expected

    def test_methods_agree_and_commute_with_evaluation(self):
        rng = np.random.default_rng(3)
        for size in (1, 2, 3, 4):
            m = [[random_poly(rng, 2, 2) for _ in range(size)] for _ in range(size)]
            cofactor = det_laurent(m, method='cofactor')
            assert cofactor == det_laurent(m, method='bareiss')
            point = [0.7 + 0.4j, -1.1 + 0.2j]
            numeric = np.linalg.det(np.array([[lp_eval(x, point) for x in row] for row in m]))
            assert abs(lp_eval(cofactor, point) - numeric) <= 1e-10 * max(1.0, abs(numeric))

    def test_char_split_single_chain(self, single_chain):
        split = char_split(build_fiber(single_chain))
        assert split.parts[(0,)] == EnergyPoly([ZERO, -ONE])
        assert split.parts[(1,)] == EnergyPoly([ONE])
        assert split.parts[(-1,)] == EnergyPoly([ONE])

    def test_char_split_lieb(self, lieb):
        split = char_split(build_fiber(lieb))
        v3 = lieb.potential[3]
        assert split.parts[(1, 0)] == EnergyPoly([-v3, ONE])
        assert split.parts[(0, 0)].degree == 3
        assert split.parts[(0, 0)].leading() == -ONE

    def test_char_split_reassembles(self, chain):
        fiber = build_fiber(chain)
        split = char_split(fiber)
        point, energy = [0.8 + 0.3j], 0.4 - 0.1j
        direct = np.linalg.det(fiber.at(point) - energy * np.eye(3))
        assert abs(split.evaluate(point, energy) - direct) <= 1e-10 * max(1.0, abs(direct))
        assert abs(split.reassemble().evaluate(point + [energy]) - direct) <= 1e-10 * max(1.0, abs(direct))

    @pytest.mark.parametrize("name", ["chain", "lieb"])
    def test_char_split_at_zero_energy(self, name, request):
        g = request.getfixturevalue(name)
        fiber = build_fiber(g)
        split = char_split(fiber)
        point = [0.8 + 0.3j] * g.d
        direct = np.linalg.det(fiber.at(point))
        assert abs(split.evaluate(point, 0) - direct) <= 1e-10 * max(1.0, abs(direct))
        total = sum((p.evaluate(ZERO) for p in split.parts.values()), ZERO)
        assert split.evaluate([ONE] * g.d, ZERO) == total

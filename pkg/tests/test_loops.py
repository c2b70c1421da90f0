import numpy as np
import pytest

from flatband.algebra.laurent import LaurentPoly
from flatband.algebra.scalars import ONE
from flatband.core.errors import DegeneratePotential, ExplosionGuard
from flatband.loops.configs import enumerate_configs, enumerate_simple_loops, loop_stats
from flatband.loops.series import config_growth, resummed_table, series_coefficient

from .conftest import potential, q, random_connected_graphs
from .oracles import loop_expansion


def z(power=1):
    return LaurentPoly.variable(1, 0, power)


def s():
    """|1 + z|^2 on the torus, as a Laurent polynomial"""
    return 2 * LaurentPoly.constant(1, ONE) + z() + z(-1)


class TestSimpleLoops:
    def test_lieb_counts(self, lieb):
        assert len(list(enumerate_simple_loops(lieb, 1, 4))) == 8
        assert len(list(enumerate_simple_loops(lieb, 2, 4))) == 4 + 16

    def test_ordering_by_length(self, lieb):
        lengths = [loop.length for loop in enumerate_simple_loops(lieb, 2, 4)]
        assert lengths == sorted(lengths)

    def test_interiors_avoid_the_base(self, chain):
        for loop in enumerate_simple_loops(chain, 3, 5):
            assert 3 not in loop.interior
            assert loop.steps[-1].vertex == 3

    def test_invalid_length(self, lieb):
        with pytest.raises(ValueError):
            list(enumerate_simple_loops(lieb, 1, 0))


class TestConfigs:
    def test_lieb_length_four(self, lieb):
        configs = list(enumerate_configs(lieb, 2, 4))
        assert len(configs) == 32
        assert len({c.encode() for c in configs}) == 32
        assert sum(1 for c in configs if c.is_simple) == 16

    def test_footprint_cap(self, lieb):
        assert list(enumerate_configs(lieb, 2, 4, cap=1)) == []
        capped = list(enumerate_configs(lieb, 2, 4, cap=2))
        assert len(capped) == 16 and all(c.is_simple for c in capped)

    def test_dimer_attachment(self, dimer):
        configs = list(enumerate_configs(dimer, 1, 4))
        assert len(configs) == 16
        for cfg in configs:
            stats = cfg.stats
            assert stats.footprint == ((2, 3),)
            assert stats.sign == -1
            assert stats.length == 4

    def test_loop_stats(self, chain):
        loop = next(cfg for cfg in enumerate_configs(chain, 3, 3) if cfg.stats.quasi == (3,))
        stats = loop_stats(loop)
        assert stats.footprint == ((1, 1), (2, 1))
        assert stats.sign == 1 and stats.weight_product == q(-1)
        assert (stats.distinct, stats.footprint_size) == (2, 2)
        assert stats.cont(chain.potential, 3) == q(-1) * q('1/2') * q('1/3')

    def test_explosion_guard(self, lieb):
        with pytest.raises(ExplosionGuard):
            list(enumerate_simple_loops(lieb, 1, 4, explosion_cap=3))
        with pytest.raises(ExplosionGuard):
            resummed_table(lieb, 2, 6, explosion_cap=5)


class TestSeriesCoefficient:
    def test_single_chain(self, single_chain):
        assert series_coefficient(single_chain, None, 1, 1) == z() + z(-1)
        for k in (2, 3, 4):
            assert series_coefficient(single_chain, None, 1, k).is_zero()

    def test_dimer(self, dimer):
        # W_2 = -1
        assert series_coefficient(dimer, None, 1, 2) == -s()
        assert series_coefficient(dimer, None, 1, 4) == s() * s()
        for k in (1, 3, 5):
            assert series_coefficient(dimer, None, 1, k).is_zero()

    def test_lieb_second_order(self, lieb):
        z1, z2 = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
        two = 2 * LaurentPoly.constant(2, ONE)
        expected = -(two + z1 + z1 ** -1) + (two + z2 + z2 ** -1).scale(q('-1/3'))
        assert series_coefficient(lieb, None, 1, 2) == expected

    def test_degenerate_potential(self, lieb):
        with pytest.raises(DegeneratePotential):
            series_coefficient(lieb, potential(0, 0, 3), 1, 2)

    def test_numeric_potential_uses_numeric_weights(self, dimer):
        value = series_coefficient(dimer, potential(0, 1).to_numeric(), 1, 2)
        assert not value.exact
        assert abs(value.coefficient((1,)) + 1) < 1e-15


class TestResummedTable:
    def test_chain(self, chain):
        table = resummed_table(chain, 3, 3)
        both = ((1, 1), (2, 1))
        assert {key: e.totalcont for key, e in table.entries.items()} == {
            (both, (1,)): q(1), (both, (3,)): q(-1), (both, (-1,)): q(1), (both, (-3,)): q(-1),
        }
        assert table.total_configs() == 4

    def test_dimer(self, dimer):
        table = resummed_table(dimer, 1, 2)
        assert {key: e.totalcont for key, e in table.entries.items()} == {
            (((2, 1),), (0,)): q(2), (((2, 1),), (1,)): q(1), (((2, 1),), (-1,)): q(1),
        }
        fourth = resummed_table(dimer, 1, 4)
        assert fourth.entries[(((2, 3),), (0,))].totalcont == q(-6)
        assert fourth.entries[(((2, 3),), (2,))].configs == 1
        assert fourth.total_configs() == 16

    def test_sorted_entries(self, dimer):
        keys = [key for key, _ in resummed_table(dimer, 1, 2).sorted_entries()]
        assert keys == sorted(keys)

    def test_invalid_order(self, dimer):
        with pytest.raises(ValueError):
            resummed_table(dimer, 1, 0)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_matches_enumerated_configurations(self, k, all_fixtures):
        for g in all_fixtures.values():
            for j in range(1, g.n + 1):
                table = resummed_table(g, j, k)
                expected = {}
                for cfg in enumerate_configs(g, j, k):
                    st = cfg.stats
                    key = (st.footprint, st.quasi)
                    value = st.weight_product * st.sign
                    expected[key] = expected[key] + value if key in expected else value
                assert {key: e.totalcont for key, e in table.entries.items()} == expected
                assert table.total_configs() == sum(1 for _ in enumerate_configs(g, j, k))

    def test_cancelled_entries_are_flagged(self, lieb):
        table = resummed_table(lieb, 1, 4)
        for entry in table.entries.values():
            assert entry.cancelled == (entry.totalcont == 0)


class TestAgainstFixedPointOracle:
    def _compare(self, g, j, max_order):
        oracle = loop_expansion(g, j, max_order)
        for k in range(1, max_order + 1):
            live = {
                key: e.totalcont for key, e in resummed_table(g, j, k).entries.items() if not e.cancelled
            }
            expected = {(fp, quasi): c for (order, fp, quasi), c in oracle.items() if order == k}
            assert live == expected, (j, k)

    def test_fixtures(self, all_fixtures):
        for g in all_fixtures.values():
            for j in range(1, g.n + 1):
                self._compare(g, j, 4)

    def test_random_graphs(self):
        for g in random_connected_graphs(seed=31, count=10, max_n=3):
            for j in range(1, g.n + 1):
                self._compare(g, j, 4)


class TestRegrouping:
    def test_table_series_equals_direct_sum(self, all_fixtures):
        for name, g in all_fixtures.items():
            if name == "lieb_v011":
                continue
            for j in range(1, g.n + 1):
                for k in range(1, 5):
                    assert resummed_table(g, j, k).series(g.potential) == series_coefficient(g, None, j, k)

    def test_table_does_not_depend_on_the_potential(self, lieb):
        table = resummed_table(lieb, 2, 4)
        rng = np.random.default_rng(13)
        for _ in range(5):
            values = rng.permutation(np.arange(-9, 10))[:3]
            V = potential(*(int(v) for v in values))
            assert table.series(V) == series_coefficient(lieb, V, 2, 4)


class TestGrowth:
    def test_counts_match_enumeration(self, dimer, lieb):
        assert config_growth(dimer, 1, 4).counts == (0, 4, 0, 16)
        growth = config_growth(lieb, 2, 4)
        assert growth.counts == tuple(sum(1 for _ in enumerate_configs(lieb, 2, k)) for k in range(1, 5))
        assert growth.constant >= 2.0

"""
Shared fixtures: fixture documents, exact potentials and a seeded generator
of random periodic graphs.
"""

import os
from fractions import Fraction

import numpy as np
import pytest

from flatband.algebra.scalars import GaussianRational
from flatband.core.config import reset_config
from flatband.graph.model import EdgeTerm, PeriodicGraphSpec, Potential, validate_spec
from flatband.graph.connectivity import is_gamma_connected
from flatband.storage.loader import load_graph

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def q(value) -> GaussianRational:
    """Exact rational shorthand: q(3), q('1/2')"""
    return GaussianRational(Fraction(value))


def potential(*values) -> Potential:
    return Potential(tuple(q(v) for v in values))


def random_graph(rng: np.random.Generator, n: int, d: int, extra: int = 2, multi: bool = True,
                 weights=(-2, -1, 1, 2)):
    """
    Random connected quotient: a spanning tree plus `extra` edges, every
    edge completed by its partner; at most one pair gets a second shift.
    """
    edges = []
    pairs = {}

    def add(a, b, shift, weight):
        shift = tuple(int(s) for s in shift)
        if a == b and not any(shift):
            return
        if a > b:
            a, b, shift = b, a, tuple(-s for s in shift)
        if a == b:
            shift = max(shift, tuple(-s for s in shift))
        key = (a, b)
        if key in pairs and shift in pairs[key]:
            return
        pairs.setdefault(key, set()).add(shift)
        w = q(int(weight))
        edges.append(EdgeTerm(a, b, shift, w))
        edges.append(EdgeTerm(b, a, tuple(-s for s in shift), w))

    for v in range(2, n + 1):
        add(int(rng.integers(1, v)), v, rng.integers(-1, 2, size=d), rng.choice(weights))
    for _ in range(extra):
        a, b = (int(x) for x in rng.integers(1, n + 1, size=2))
        has_multi = any(len(s) > 1 for s in pairs.values())
        if (min(a, b), max(a, b)) in pairs and (not multi or has_multi):
            continue
        add(a, b, rng.integers(-1, 2, size=d), rng.choice(weights))
    values = rng.permutation(np.arange(-3 * n, 3 * n + 1))[:n]
    return validate_spec(PeriodicGraphSpec(d, n, tuple(edges), potential(*(int(v) for v in values))))


def random_connected_graphs(seed: int, count: int, max_n: int = 4, max_d: int = 2, extra: int = 2):
    """Seeded list of Gamma-connected random graphs"""
    rng = np.random.default_rng(seed)
    graphs = []
    while len(graphs) < count:
        g = random_graph(rng, int(rng.integers(1, max_n + 1)), int(rng.integers(1, max_d + 1)), extra)
        if g.edges and is_gamma_connected(g)[0]:
            graphs.append(g)
    return graphs


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Each test reads the environment again"""
    for var in ('FLATBAND_EXPLOSION_CAP', 'FLATBAND_TORUS_CAP', 'FLATBAND_GRID_SIDE',
                'FLATBAND_MAX_LOOP_LENGTH', 'FLATBAND_SEED', 'FLATBAND_LOG_FILE', 'FLATBAND_EVENT_LOG'):
        monkeypatch.delenv(var, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def lieb():
    return load_graph(fixture_path('lieb.json'))


@pytest.fixture
def lieb_flat():
    return load_graph(fixture_path('lieb_v011.json'))


@pytest.fixture
def chain():
    return load_graph(fixture_path('chain.json'))


@pytest.fixture
def single_chain():
    return load_graph(fixture_path('single_chain.json'))


@pytest.fixture
def dimer():
    return load_graph(fixture_path('dimer.json'))


@pytest.fixture
def isolated():
    return load_graph(fixture_path('isolated.json'))


@pytest.fixture
def all_fixtures(lieb, lieb_flat, chain, single_chain, dimer, isolated):
    return {'lieb': lieb, 'lieb_v011': lieb_flat, 'chain': chain, 'single_chain': single_chain,
            'dimer': dimer, 'isolated': isolated}


@pytest.fixture
def chain_cancelling():
    return load_graph(fixture_path('chain_cancelling.json'))

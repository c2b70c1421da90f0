"""
Connectivity of the periodic graph from its quotient data.
"""

import logging
from typing import Dict, List, Tuple

import networkx as nx
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors

from .model import LatticeVector, ValidatedGraph

logger = logging.getLogger(__name__)


def quotient_multigraph(g: ValidatedGraph) -> nx.MultiGraph:
    """Undirected quotient graph, one edge per edge term between distinct vertices"""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(1, g.n + 1))
    for edge in g.edges:
        if edge.source != edge.target:
            graph.add_edge(edge.source, edge.target, shift=edge.shift)
    return graph


def tree_potentials(g: ValidatedGraph, root: int = 1) -> Dict[int, LatticeVector]:
    """phi(v): cell offset of v along a BFS spanning tree of its component"""
    by_pair: Dict[Tuple[int, int], LatticeVector] = {}
    for edge in g.edges:
        by_pair.setdefault((edge.source, edge.target), edge.shift)
    phi = {root: (0,) * g.d}
    for u, v in nx.bfs_edges(quotient_multigraph(g), root):
        shift = by_pair[(u, v)]
        phi[v] = tuple(a + b for a, b in zip(phi[u], shift))
    return phi


def cycle_generators(g: ValidatedGraph) -> List[LatticeVector]:
    """alpha + phi(i) - phi(j) per edge term; they generate the quasimomenta of all closed walks"""
    phi = tree_potentials(g)
    generators = set()
    for edge in g.edges:
        vector = tuple(a + pi - pj for a, pi, pj in zip(edge.shift, phi[edge.source], phi[edge.target]))
        if any(vector):
            generators.add(vector)
    return sorted(generators)


def _sublattice_basis(generators: List[LatticeVector], d: int) -> List[LatticeVector]:
    if not generators:
        return []
    hnf = hermite_normal_form(Matrix(generators).T)
    return [tuple(int(x) for x in hnf.col(k)) for k in range(hnf.cols) if any(hnf.col(k))]


def is_gamma_connected(g: ValidatedGraph):
    """
    Decide whether the periodic graph is connected.

    True iff the quotient is connected and the cycle quasimomenta generate
    all of Z^d, which holds iff the generator matrix has d unit invariant
    factors. The certificate lists the components and the sublattice basis.
    """
    components = sorted(sorted(c) for c in nx.connected_components(quotient_multigraph(g)))
    if len(components) > 1:
        logger.info(f"Quotient graph splits into {len(components)} components")
        return False, {"components": components, "sublattice_basis": None}

    generators = cycle_generators(g)
    if generators:
        factors = invariant_factors(Matrix(generators).T, domain=ZZ)
        units = sum(1 for f in factors if abs(int(f)) == 1)
    else:
        units = 0
    basis = _sublattice_basis(generators, g.d)
    connected = units == g.d
    if not connected:
        logger.info(f"Cycle quasimomenta generate a proper sublattice with basis {basis}")
    return connected, {"components": components, "sublattice_basis": basis}


def is_multi_connected(g: ValidatedGraph):
    """Ordered vertex pairs joined by edge terms with at least two distinct shifts"""
    shifts: Dict[Tuple[int, int], set] = {}
    for edge in g.edges:
        shifts.setdefault((edge.source, edge.target), set()).add(edge.shift)
    witness = [(pair, sorted(s)) for pair, s in sorted(shifts.items()) if len(s) > 1]
    return bool(witness), witness

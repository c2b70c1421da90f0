"""
Quotient description of a Z^d-periodic weighted graph and the matrices b_alpha
derived from it.

An edge term (i, j, alpha, w) joins vertex i of cell n to vertex j of cell
n + alpha and contributes w * z^alpha to entry (i, j) of the fiber matrix.
Vertices are numbered 1..N.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..algebra.scalars import ONE, conjugate, is_exact, is_zero, one_like, to_numeric, zero_like
from ..core.errors import (
    DegeneratePotential, EmptyGraph, RankMismatch, SelfLoopZeroShift, SizeMismatch,
    VertexOutOfRange, WeakSymmetryViolation,
)
from ..utils.helpers import scalar_to_json

logger = logging.getLogger(__name__)

LatticeVector = Tuple[int, ...]


def negate(shift: Sequence[int]) -> LatticeVector:
    return tuple(-x for x in shift)


@dataclass(frozen=True, order=True)
class EdgeTerm:
    """Entry (b_shift)[source, target] = weight"""

    source: int
    target: int
    shift: LatticeVector
    weight: object = field(compare=False)

    @property
    def key(self) -> Tuple[int, int, LatticeVector]:
        return (self.source, self.target, self.shift)

    def partner_key(self) -> Tuple[int, int, LatticeVector]:
        return (self.target, self.source, negate(self.shift))


@dataclass(frozen=True)
class Potential:
    """Diagonal V = diag(V_1, ..., V_N)"""

    values: Tuple

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, vertex: int):
        """1-based access"""
        return self.values[vertex - 1]

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.values)

    def separation(self) -> float:
        """min |V_i - V_k| over i < k; infinite for a single vertex"""
        return min((abs(a - b) for a, b in itertools.combinations(self.values, 2)), default=float('inf'))

    def is_separated(self, r: float) -> bool:
        return self.separation() > r

    def max_abs(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)

    def is_real(self) -> bool:
        return all(v == conjugate(v) for v in self.values)

    def W(self, j: int) -> Dict[int, object]:
        """Vertex factors W_s = 1 / (V_j - V_s) for s != j"""
        factors = {}
        for s in range(1, len(self.values) + 1):
            if s == j:
                continue
            gap = self[j] - self[s]
            if is_zero(gap):
                raise DegeneratePotential(f"V_{j} = V_{s} = {self[j]}; vertex factor undefined")
            factors[s] = 1 / gap
        return factors

    def to_numeric(self) -> 'Potential':
        return Potential(tuple(to_numeric(v) for v in self.values))


@dataclass(frozen=True)
class PeriodicGraphSpec:
    """Raw quotient data as read from a document"""

    d: int
    n: int
    edges: Tuple[EdgeTerm, ...]
    potential: Optional[Potential] = None


@dataclass(frozen=True)
class ValidatedGraph:
    """Merged, checked edge list; immutable after validation"""

    d: int
    n: int
    edges: Tuple[EdgeTerm, ...]
    potential: Optional[Potential] = None

    @cached_property
    def adjacency(self) -> Dict[int, List[EdgeTerm]]:
        """Outgoing edge terms per vertex, sorted by (target, shift)"""
        table = {v: [] for v in range(1, self.n + 1)}
        for edge in self.edges:
            table[edge.source].append(edge)
        for v in table:
            table[v].sort()
        return table

    @property
    def exact(self) -> bool:
        return all(is_exact(e.weight) for e in self.edges)

    def weight(self, source: int, target: int, shift: Sequence[int]):
        for edge in self.adjacency[source]:
            if edge.target == target and edge.shift == tuple(shift):
                return edge.weight
        return None

    def with_potential(self, potential: Potential) -> 'ValidatedGraph':
        if len(potential) != self.n:
            raise SizeMismatch(f"potential has {len(potential)} values for {self.n} vertices")
        return ValidatedGraph(self.d, self.n, self.edges, potential)

    def to_numeric(self) -> 'ValidatedGraph':
        edges = tuple(EdgeTerm(e.source, e.target, e.shift, to_numeric(e.weight)) for e in self.edges)
        potential = self.potential.to_numeric() if self.potential is not None else None
        return ValidatedGraph(self.d, self.n, edges, potential)


@dataclass(frozen=True)
class QuotientGraph:
    """The family {b_alpha} with a bound on its entries"""

    d: int
    n: int
    shift_support: Tuple[LatticeVector, ...]
    matrices: Dict[LatticeVector, Tuple[Tuple, ...]]
    weight_bound: float

    def entry(self, shift: Sequence[int], source: int, target: int):
        """(b_shift)[source, target] with 1-based vertices"""
        matrix = self.matrices.get(tuple(shift))
        if matrix is None:
            return 0
        return matrix[source - 1][target - 1]


def _merge(edges: Iterable[EdgeTerm]) -> Dict[Tuple, object]:
    merged: Dict[Tuple, object] = {}
    for edge in edges:
        if edge.key in merged:
            merged[edge.key] = merged[edge.key] + edge.weight
        else:
            merged[edge.key] = edge.weight
    return {k: w for k, w in merged.items() if w != 0}


def validate_spec(spec: PeriodicGraphSpec) -> ValidatedGraph:
    """Check the quotient invariants and merge duplicate edge terms"""
    if spec.n <= 0:
        raise EmptyGraph("the fundamental domain has no vertices")
    if spec.d < 1:
        raise RankMismatch(f"spatial rank must be at least 1, got {spec.d}")
    if spec.potential is not None and len(spec.potential) != spec.n:
        raise SizeMismatch(f"potential has {len(spec.potential)} values for {spec.n} vertices")

    for edge in spec.edges:
        if len(edge.shift) != spec.d:
            raise RankMismatch(f"edge {edge.key} has a shift of length {len(edge.shift)}, expected {spec.d}")
        for vertex in (edge.source, edge.target):
            if not 1 <= vertex <= spec.n:
                raise VertexOutOfRange(f"edge {edge.key} references vertex {vertex} outside 1..{spec.n}")
        if edge.source == edge.target and not any(edge.shift):
            raise SelfLoopZeroShift(f"edge {edge.key} is a self-loop with zero shift")

    merged = _merge(spec.edges)
    for (source, target, shift) in sorted(merged):
        if (target, source, negate(shift)) not in merged:
            raise WeakSymmetryViolation(
                f"edge ({source}, {target}, {list(shift)}) has no partner ({target}, {source}, {list(negate(shift))})"
            )

    edges = tuple(EdgeTerm(s, t, a, w) for (s, t, a), w in sorted(merged.items()))
    logger.debug(f"Validated graph: d={spec.d}, N={spec.n}, {len(edges)} edge terms")
    return ValidatedGraph(spec.d, spec.n, edges, spec.potential)


def quotient_matrices(g: ValidatedGraph) -> QuotientGraph:
    """b_alpha[i][j] = sum of weights of edge terms (i, j, alpha)"""
    zero = zero_like(g.edges[0].weight) if g.edges else 0
    rows: Dict[LatticeVector, List[List]] = {}
    for edge in g.edges:
        matrix = rows.setdefault(edge.shift, [[zero] * g.n for _ in range(g.n)])
        matrix[edge.source - 1][edge.target - 1] = matrix[edge.source - 1][edge.target - 1] + edge.weight
    matrices = {shift: tuple(tuple(r) for r in m) for shift, m in rows.items()}
    largest = max((abs(e.weight) for e in g.edges), default=0.0)
    return QuotientGraph(
        d=g.d,
        n=g.n,
        shift_support=tuple(sorted(matrices)),
        matrices=matrices,
        weight_bound=largest * g.n,
    )


def is_self_adjoint(g: ValidatedGraph, potential: Optional[Potential] = None) -> bool:
    """Real potential and b_alpha[i][j] = conj(b_-alpha[j][i]) for all entries"""
    potential = potential if potential is not None else g.potential
    if potential is not None and not potential.is_real():
        return False
    for edge in g.edges:
        partner = g.weight(edge.target, edge.source, negate(edge.shift))
        if partner is None or edge.weight != conjugate(partner):
            return False
    return True


def autosymmetrize(edges: Sequence[EdgeTerm]) -> List[EdgeTerm]:
    """Add the conjugate-reverse partner of every edge that lacks one"""
    keys = {e.key for e in edges}
    completed = list(edges)
    for edge in edges:
        if edge.partner_key() not in keys:
            partner = EdgeTerm(edge.target, edge.source, negate(edge.shift), conjugate(edge.weight))
            completed.append(partner)
            keys.add(partner.key)
    added = len(completed) - len(edges)
    if added:
        logger.info(f"Autosymmetrize added {added} partner edge terms")
    return completed


def to_document(g: ValidatedGraph, potential: Optional[Potential] = None) -> dict:
    """Graph-spec document of the merged edge list"""
    potential = potential if potential is not None else g.potential
    if potential is None:
        potential = Potential((zero_like(g.edges[0].weight) if g.edges else 0,) * g.n)
    return {
        "d": g.d,
        "n": g.n,
        "potential": [scalar_to_json(v) for v in potential.values],
        "edges": [
            {"from": e.source, "to": e.target, "shift": list(e.shift), "weight": scalar_to_json(e.weight)}
            for e in g.edges
        ],
    }


def spec_digest(g: ValidatedGraph, potential: Optional[Potential] = None) -> str:
    """sha256 over the canonical JSON of the merged spec"""
    canonical = json.dumps(to_document(g, potential), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def unit_weight(g: ValidatedGraph):
    """1 in the backend of the edge weights"""
    if g.edges:
        return one_like(g.edges[0].weight)
    if g.potential is not None:
        return one_like(g.potential.values[0])
    return one_like(ONE)

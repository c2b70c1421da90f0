"""
Perturbation series of the eigenvalue branch lambda_j(eps) of
h_eps(z) = V + eps * B(z) that starts at V_j.

The eps^k coefficient is the sum of z^quasi * cont over all j-loop
configurations of length k. Grouping configurations by (footprint, quasi)
gives the potential-independent table of totalcont values.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.laurent import LaurentPoly
from ..algebra.scalars import to_numeric
from ..core.errors import BranchTrackingAmbiguity, DegeneratePotential
from ..core.events import EventLogger
from ..graph.model import LatticeVector, Potential, ValidatedGraph, quotient_matrices, unit_weight
from .configs import FootprintCap, Footprint, _EnumerationGuard, _simple_loops_of_length, enumerate_configs

logger = logging.getLogger(__name__)

# (multiplicity vector indexed by vertex - 1, quasi) -> [totalcont, configs]
_Table = Dict[Tuple[Tuple[int, ...], LatticeVector], list]


@dataclass(frozen=True)
class TableEntry:
    totalcont: object
    configs: int

    @property
    def cancelled(self) -> bool:
        """All contributions with this footprint and quasimomentum cancel"""
        return self.totalcont == 0


@dataclass(frozen=True)
class ResummedTable:
    base: int
    order: int
    d: int
    entries: Dict[Tuple[Footprint, LatticeVector], TableEntry]

    def sorted_entries(self) -> List[Tuple[Tuple[Footprint, LatticeVector], TableEntry]]:
        return sorted(self.entries.items(), key=lambda item: item[0])

    def total_configs(self) -> int:
        return sum(e.configs for e in self.entries.values())

    def series(self, potential: Potential) -> LaurentPoly:
        """sum of totalcont * W^footprint * z^quasi"""
        factors = potential.W(self.base)
        total = LaurentPoly.zero(self.d)
        for (footprint, quasi), entry in self.entries.items():
            value = entry.totalcont
            for vertex, mult in footprint:
                value = value * factors[vertex] ** mult
            total = total + LaurentPoly.monomial(self.d, quasi, value)
        return total


class _TableBuilder:
    """Aggregated loop-configuration tables, memoized by length"""

    def __init__(self, g: ValidatedGraph, j: int, cap=None, explosion_cap: Optional[int] = None):
        self.g = g
        self.j = j
        self.cap = cap if isinstance(cap, FootprintCap) else FootprintCap(cap)
        self.guard = _EnumerationGuard(explosion_cap)
        self.one = unit_weight(g)
        self.empty = ((0,) * g.n, (0,) * g.d)
        self._roots: Dict[int, Dict[Tuple[int, ...], Dict[LatticeVector, list]]] = {}
        self._configs: Dict[int, _Table] = {}
        self._attachments: Dict[Tuple[int, int], _Table] = {}

    def _admits(self, footprint: Tuple[int, ...]) -> bool:
        return all(m <= self.cap.limit(v + 1) for v, m in enumerate(footprint))

    def _product(self, left: _Table, right: _Table) -> _Table:
        result: _Table = {}
        for (fp1, q1), (w1, c1) in left.items():
            for (fp2, q2), (w2, c2) in right.items():
                fp = tuple(a + b for a, b in zip(fp1, fp2))
                if not self._admits(fp):
                    continue
                key = (fp, tuple(a + b for a, b in zip(q1, q2)))
                _accumulate(result, key, w1 * w2, c1 * c2)
        return result

    def roots(self, length: int):
        """Simple loops of a length grouped by interior vertex sequence, then quasi"""
        if length not in self._roots:
            grouped: Dict[Tuple[int, ...], Dict[LatticeVector, list]] = {}
            for loop in _simple_loops_of_length(self.g, self.j, length, self.cap, self.guard):
                weight = self.one
                quasi = [0] * self.g.d
                for step in loop.steps:
                    weight = weight * step.weight
                    quasi = [a + b for a, b in zip(quasi, step.shift)]
                _accumulate(grouped.setdefault(loop.interior, {}), tuple(quasi), weight, 1)
            self._roots[length] = grouped
        return self._roots[length]

    def attachments(self, vertex: int, total: int) -> _Table:
        """Ordered sequences of configurations of total length, attached at vertex"""
        key = (vertex, total)
        if key in self._attachments:
            return self._attachments[key]
        if total == 0:
            return {self.empty: [self.one, 1]}
        marker = tuple(1 if v == vertex else 0 for v in range(1, self.g.n + 1))
        result: _Table = {}
        for first in range(1, total + 1):
            head = {
                (tuple(a + b for a, b in zip(fp, marker)), q): [-w, c]
                for (fp, q), (w, c) in self.configs(first).items()
            }
            for (fp, q), (w, c) in self._product(head, self.attachments(vertex, total - first)).items():
                _accumulate(result, (fp, q), w, c)
        self.guard.spend(len(result))
        self._attachments[key] = result
        return result

    def configs(self, length: int) -> _Table:
        if length in self._configs:
            return self._configs[length]
        result: _Table = {}
        for root_length in range(1, length + 1):
            extra = length - root_length
            if extra and root_length == 1:
                continue
            for interior, by_quasi in self.roots(root_length).items():
                base_fp = tuple(interior.count(v) for v in range(1, self.g.n + 1))
                states = {0: {(base_fp, q): list(wc) for q, wc in by_quasi.items()}}
                for vertex in interior:
                    advanced: Dict[int, _Table] = defaultdict(dict)
                    for used, table in states.items():
                        for amount in range(extra - used + 1):
                            attached = self.attachments(vertex, amount)
                            if not attached:
                                continue
                            for key, (w, c) in self._product(table, attached).items():
                                _accumulate(advanced[used + amount], key, w, c)
                    states = advanced
                for key, (w, c) in states.get(extra, {}).items():
                    _accumulate(result, key, w, c)
        self.guard.spend(len(result))
        self._configs[length] = result
        return result


def _accumulate(table: dict, key, weight, count: int):
    if key in table:
        table[key][0] = table[key][0] + weight
        table[key][1] += count
    else:
        table[key] = [weight, count]


def _footprint_pairs(vector: Sequence[int]) -> Footprint:
    return tuple((v + 1, m) for v, m in enumerate(vector) if m)


def resummed_table(g: ValidatedGraph, j: int, k: int, cap=None,
                   explosion_cap: Optional[int] = None) -> ResummedTable:
    """
    totalcont per (footprint, quasi) over all configurations of length k.

    Entries whose contributions cancel exactly are kept; TableEntry.cancelled
    flags them.
    """
    if k < 1:
        raise ValueError("order must be at least 1")
    raw = _TableBuilder(g, j, cap, explosion_cap).configs(k)
    entries = {
        (_footprint_pairs(fp), quasi): TableEntry(w, c)
        for (fp, quasi), (w, c) in raw.items()
    }
    cancelled = sum(1 for e in entries.values() if e.cancelled)
    logger.debug(f"Resummed table j={j}, k={k}: {len(entries)} entries, {cancelled} cancelled")
    return ResummedTable(j, k, g.d, entries)


def _matching_backends(g: ValidatedGraph, potential: Potential) -> ValidatedGraph:
    """Floating potentials are combined with floating weights"""
    if g.exact and not potential.exact:
        return g.to_numeric()
    return g


def series_coefficient(g: ValidatedGraph, potential: Optional[Potential], j: int, k: int) -> LaurentPoly:
    """eps^k coefficient of lambda_j: sum over configurations of z^quasi * cont"""
    potential = potential if potential is not None else g.potential
    g = _matching_backends(g, potential)
    potential.W(j)
    total: Dict[LatticeVector, object] = {}
    for cfg in enumerate_configs(g, j, k):
        stats = cfg.stats
        value = stats.cont(potential, j)
        total[stats.quasi] = total[stats.quasi] + value if stats.quasi in total else value
    return LaurentPoly(g.d, total)


def heuristic_epsilon(g: ValidatedGraph, potential: Optional[Potential] = None) -> float:
    """0.01 * r / (N * M_b): a safe step inside the perturbative regime"""
    potential = potential if potential is not None else g.potential
    separation = potential.separation()
    if math.isinf(separation):
        separation = 1.0
    bound = quotient_matrices(g).weight_bound or 1.0
    return 0.01 * separation / (g.n * bound)


def hopping_matrix(g: ValidatedGraph, z: Sequence[complex]) -> np.ndarray:
    """B(z) = sum_alpha b_alpha z^alpha, numerically"""
    B = np.zeros((g.n, g.n), dtype=complex)
    for edge in g.edges:
        B[edge.source - 1, edge.target - 1] += to_numeric(edge.weight) * np.prod(
            [complex(x) ** a for x, a in zip(z, edge.shift)])
    return B


def branch_shift(V: np.ndarray, B: np.ndarray, j: int, epsilon: complex, start: complex = 0j,
                 max_iter: int = 200) -> complex:
    """
    lambda_j(eps) - V_j as the fixed point of the Feshbach map
    delta = eps B_jj + eps^2 B_j,rest ((V_j + delta) - V_rest - eps B_rest,rest)^-1 B_rest,j
    """
    i = j - 1
    rest = [k for k in range(len(V)) if k != i]
    diagonal = epsilon * B[i, i]
    if not rest:
        return diagonal
    u = epsilon * B[i, rest]
    v = epsilon * B[rest, i]
    D = np.diag(V[i] - V[rest]) - epsilon * B[np.ix_(rest, rest)]
    identity = np.eye(len(rest))
    delta = start
    for _ in range(max_iter):
        updated = diagonal + u @ np.linalg.solve(D + delta * identity, v)
        if abs(updated - delta) <= 1e-15 * max(abs(updated), 1e-300):
            return updated
        delta = updated
    logger.warning(f"Feshbach iteration for j={j} at eps={epsilon} stopped before convergence")
    return delta


def track_branch(V: np.ndarray, B: np.ndarray, j: int, epsilons: Sequence[float], steps: int = 200) -> Dict[float, complex]:
    """Follow the eigenvalue starting at V_j by nearest-neighbour continuation in eps"""
    targets = sorted(set(float(e) for e in epsilons))
    path = sorted(set(np.linspace(0.0, targets[-1], steps).tolist()) | set(targets))
    current = complex(V[j - 1])
    tracked = {}
    scale = 1 + float(np.max(np.abs(V))) + float(np.max(np.abs(B)))
    for eps in path:
        eigenvalues = np.linalg.eigvals(np.diag(V) + eps * B)
        distances = np.abs(eigenvalues - current)
        order = np.argsort(distances)
        if len(order) > 1:
            first, second = eigenvalues[order[0]], eigenvalues[order[1]]
            if (distances[order[1]] - distances[order[0]] <= 1e-9 * scale
                    and abs(first - second) > 1e-9 * scale):
                EventLogger().log_event("BRANCH_AMBIGUITY", f"eps={eps}: {first} and {second} equidistant", j)
                raise BranchTrackingAmbiguity(f"two eigenvalues equidistant from the branch at eps={eps}")
        current = complex(eigenvalues[order[0]])
        if eps in targets:
            tracked[eps] = current
    return tracked


@dataclass
class ConvergenceReport:
    """Errors |lambda_j(eps) - S_K(eps)| and their log-log slope (None when the series is exact)"""

    base: int
    order: int
    epsilons: List[float]
    errors: List[float]
    slope: Optional[float]
    coefficients: List[complex] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.slope is None


def series_vs_eigenvalue_check(g: ValidatedGraph, potential: Optional[Potential], j: int, K: int,
                               epsilons: Optional[Sequence[float]] = None,
                               z: Optional[Sequence[complex]] = None) -> ConvergenceReport:
    """Compare the order-K truncated series with the eigenvalue branch continued from V_j"""
    potential = potential if potential is not None else g.potential
    if potential.separation() <= 0:
        raise DegeneratePotential("branch comparison needs pairwise distinct potential values")
    z = tuple(z) if z is not None else tuple(1.1 * np.exp(2j * np.pi * 0.3 * (k + 1)) for k in range(g.d))
    if epsilons is None:
        top = heuristic_epsilon(g, potential)
        epsilons = [top * f for f in (1.0, 0.7, 0.5, 0.35, 0.25)]
    epsilons = sorted((float(e) for e in epsilons), reverse=True)

    coefficients = [complex(series_coefficient(g, potential, j, k).evaluate(z)) for k in range(1, K + 1)]
    V = np.array([complex(to_numeric(v)) for v in potential.values])
    B = hopping_matrix(g, z)
    tracked = track_branch(V, B, j, epsilons)

    errors = []
    for eps in epsilons:
        delta = branch_shift(V, B, j, eps, start=tracked[eps] - V[j - 1])
        if abs(V[j - 1] + delta - tracked[eps]) > 1e-8 * (1 + abs(tracked[eps])):
            logger.warning(f"Feshbach branch at eps={eps} differs from the tracked eigenvalue")
        series = sum(c * eps ** (k + 1) for k, c in enumerate(coefficients))
        errors.append(float(abs(delta - series)))

    floor = 1e-13 * max(1.0, max(abs(c) for c in coefficients) if coefficients else 1.0) * epsilons[0]
    usable = [(e, err) for e, err in zip(epsilons, errors) if err > floor]
    slope = None
    if len(usable) >= 2:
        slope = float(np.polyfit(np.log([e for e, _ in usable]), np.log([err for _, err in usable]), 1)[0])
    logger.info(f"Series check j={j}, K={K}: slope {slope if slope is not None else 'exact'}")
    return ConvergenceReport(j, K, epsilons, errors, slope, coefficients)


def taylor_coefficients(g: ValidatedGraph, potential: Optional[Potential], j: int, K: int,
                        z: Sequence[complex], radius: Optional[float] = None, points: int = 64) -> List[complex]:
    """
    Numeric eps^k coefficients of lambda_j for k = 0..K by Cauchy quadrature
    on a circle |eps| = radius; k! times the k-th value is the k-th derivative.
    """
    potential = potential if potential is not None else g.potential
    V = np.array([complex(to_numeric(v)) for v in potential.values])
    B = hopping_matrix(g, z)
    if radius is None:
        separation = potential.separation()
        separation = 1.0 if math.isinf(separation) else separation
        row_sum = float(np.max(np.sum(np.abs(B), axis=1))) or 1.0
        radius = 0.1 * separation / row_sum
    angles = 2 * np.pi * np.arange(points) / points
    values = []
    delta = 0j
    for angle in angles:
        delta = branch_shift(V, B, j, radius * np.exp(1j * angle), start=delta)
        values.append(delta)
    spectrum = np.fft.fft(np.array(values)) / points
    coefficients = [complex(V[j - 1])]
    coefficients.extend(complex(spectrum[k] / radius ** k) for k in range(1, K + 1))
    return coefficients


@dataclass(frozen=True)
class GrowthReport:
    counts: Tuple[int, ...]
    constant: float


def config_growth(g: ValidatedGraph, j: int, kmax: int) -> GrowthReport:
    """Configuration counts per length and the fitted constant max_k count(k)^(1/k)"""
    builder = _TableBuilder(g, j)
    counts = tuple(sum(c for _, c in builder.configs(k).values()) for k in range(1, kmax + 1))
    constant = max((c ** (1.0 / k) for k, c in enumerate(counts, start=1) if c), default=0.0)
    return GrowthReport(counts, constant)

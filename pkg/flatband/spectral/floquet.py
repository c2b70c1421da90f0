"""
Fiber matrices h(z), their evaluation on the torus, band sampling and the
finite-torus check of the Floquet decomposition.
"""

from __future__ import annotations

import cmath
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..algebra.laurent import LaurentPoly
from ..algebra.scalars import to_numeric
from ..core.config import get_config
from ..core.errors import DimensionTooLarge, EigenSolverFailure, SizeMismatch
from ..graph.model import Potential, ValidatedGraph, is_self_adjoint, quotient_matrices, unit_weight

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class FiberMatrix:
    """h_eps(z) = V + eps * sum_alpha b_alpha z^alpha as an N x N matrix of Laurent polynomials"""

    d: int
    size: int
    entries: Tuple[Tuple[LaurentPoly, ...], ...]
    epsilon: object
    potential: Potential
    weight_bound: float

    @property
    def exact(self) -> bool:
        return all(entry.exact for row in self.entries for entry in row)

    def is_self_adjoint(self) -> bool:
        """h(z)* = h(z) on the torus, checked coefficientwise"""
        return all(
            self.entries[i][j] == self.entries[j][i].conjugate_reverse()
            for i in range(self.size) for j in range(i, self.size)
        )

    def at(self, z: Sequence) -> np.ndarray:
        """Numeric matrix at an arbitrary point of (C \\ 0)^d"""
        z = [complex(x) for x in z]
        return np.array([[complex(entry.evaluate(z)) for entry in row] for row in self.entries])


def build_fiber(g: ValidatedGraph, potential: Optional[Potential] = None, epsilon=None) -> FiberMatrix:
    """Entries V_i delta_ij + eps * sum_alpha z^alpha (b_alpha)_ij"""
    potential = potential if potential is not None else g.potential
    if potential is None or len(potential) != g.n:
        raise SizeMismatch(f"fiber needs a potential with {g.n} values")
    if epsilon is None:
        epsilon = unit_weight(g)
    rows = [[LaurentPoly.zero(g.d) for _ in range(g.n)] for _ in range(g.n)]
    for i in range(g.n):
        rows[i][i] = LaurentPoly.constant(g.d, potential.values[i])
    for edge in g.edges:
        term = LaurentPoly.monomial(g.d, edge.shift, edge.weight * epsilon)
        rows[edge.source - 1][edge.target - 1] = rows[edge.source - 1][edge.target - 1] + term
    bound = quotient_matrices(g).weight_bound
    return FiberMatrix(
        d=g.d,
        size=g.n,
        entries=tuple(tuple(r) for r in rows),
        epsilon=epsilon,
        potential=potential,
        weight_bound=bound * abs(epsilon),
    )


def torus_point(theta: Sequence[float]) -> List[complex]:
    return [cmath.exp(2j * cmath.pi * float(t)) for t in theta]


def eval_fiber(f: FiberMatrix, theta: Sequence[float]) -> np.ndarray:
    """Entrywise evaluation at z_k = exp(2 pi i theta_k)"""
    return f.at(torus_point(theta))


def uniform_grid(d: int, side: Optional[int] = None) -> List[Tuple[float, ...]]:
    """Tensor grid {0, 1/side, ..., (side-1)/side}^d"""
    side = side or get_config().grid_side
    return list(itertools.product([k / side for k in range(side)], repeat=d))


def _eigenvalues(matrix: np.ndarray, hermitian: bool) -> np.ndarray:
    try:
        if hermitian:
            return np.linalg.eigvalsh(matrix)
        return np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as e:
        raise EigenSolverFailure(f"eigensolver did not converge: {e}")


@dataclass(frozen=True)
class BandSample:
    """Eigenvalues of h(theta) per grid point; rows sorted ascending when self-adjoint"""

    grid: Tuple[Tuple[float, ...], ...]
    values: np.ndarray
    hermitian: bool


def band_sample(f: FiberMatrix, grid: Optional[Sequence[Sequence[float]]] = None) -> BandSample:
    grid = tuple(tuple(p) for p in (grid if grid is not None else uniform_grid(f.d)))
    hermitian = f.is_self_adjoint()
    rows = [_eigenvalues(eval_fiber(f, theta), hermitian) for theta in grid]
    values = np.array(rows) if rows else np.zeros((0, f.size))
    logger.debug(f"Sampled {len(grid)} fibers of size {f.size} (hermitian={hermitian})")
    return BandSample(grid=grid, values=values, hermitian=hermitian)


@dataclass(frozen=True)
class BandEndpoints:
    bands: Tuple[Tuple[float, float], ...]
    flat_candidates: Tuple[int, ...]


def band_endpoints(sample: BandSample, tol: float = 1e-9) -> BandEndpoints:
    """Per-band ranges [min E_j, max E_j] over the sampled grid; 1-based indices of bands narrower than tol"""
    if not sample.hermitian:
        raise ValueError("band endpoints are only defined for self-adjoint fibers")
    lows = sample.values.min(axis=0)
    highs = sample.values.max(axis=0)
    bands = tuple((float(lo), float(hi)) for lo, hi in zip(lows, highs))
    flat = tuple(k + 1 for k, (lo, hi) in enumerate(bands) if hi - lo <= tol * (1 + abs(lo)))
    return BandEndpoints(bands, flat)


def torus_matrix(g: ValidatedGraph, potential: Potential, L: int) -> np.ndarray:
    """H restricted to (Z/LZ)^d with shifts wrapped mod L; index = cell * N + vertex"""
    cells = list(itertools.product(range(L), repeat=g.d))
    index = {cell: k for k, cell in enumerate(cells)}
    n = g.n
    H = np.zeros((n * len(cells), n * len(cells)), dtype=complex)
    for cell, k in index.items():
        for i in range(n):
            H[k * n + i, k * n + i] += to_numeric(potential.values[i])
        for edge in g.edges:
            target = index[tuple((c + a) % L for c, a in zip(cell, edge.shift))]
            H[k * n + edge.source - 1, target * n + edge.target - 1] += to_numeric(edge.weight)
    return H


def finite_torus_check(g: ValidatedGraph, potential: Optional[Potential] = None, L: int = 2,
                       cap: Optional[int] = None):
    """Compare the torus spectrum with the union of fiber spectra at theta in {0, 1/L, ...}^d"""
    if L < 1:
        raise ValueError("torus side L must be positive")
    potential = potential if potential is not None else g.potential
    cap = cap or get_config().torus_cap
    dimension = g.n * L ** g.d
    if dimension > cap:
        raise DimensionTooLarge(f"torus matrix of dimension {dimension} exceeds the cap {cap}")

    hermitian = is_self_adjoint(g, potential)
    fiber = build_fiber(g, potential)
    torus = _eigenvalues(torus_matrix(g, potential, L), hermitian)
    fibers = np.concatenate([_eigenvalues(eval_fiber(fiber, theta), hermitian)
                             for theta in uniform_grid(g.d, L)])

    if hermitian:
        deviation = float(np.max(np.abs(np.sort(torus) - np.sort(fibers))))
    else:
        cost = np.abs(torus[:, None] - fibers[None, :])
        rows, cols = linear_sum_assignment(cost)
        deviation = float(cost[rows, cols].max())

    tolerance = 1e-8 * (1 + potential.max_abs() + quotient_matrices(g).weight_bound)
    ok = deviation <= tolerance
    if not ok:
        logger.warning(f"Finite torus L={L}: deviation {deviation:.3e} above tolerance {tolerance:.3e}")
    return ok, deviation

"""
Exact flat-band detection and the genericity probe over sampled potentials.

E is a flat band iff every z-coefficient q_alpha of det(h(z) - E) vanishes at
E, so the flat-band energies are the roots of gcd_alpha q_alpha.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.determinant import char_split
from ..algebra.energy import EnergyPoly, gcd_energy, roots_energy
from ..algebra.scalars import GaussianRational, is_exact, to_numeric
from ..core.config import get_config
from ..core.errors import BackendMismatch
from ..core.events import EventLogger
from ..graph.model import Potential, ValidatedGraph
from .floquet import FiberMatrix, build_fiber

logger = logging.getLogger(__name__)

NUMERIC_DUPLICATE_TOL = 1e-7


@dataclass(frozen=True)
class FlatBandEnergy:
    energy: object
    exact: bool
    residuals: Dict[Tuple[int, ...], object]


@dataclass(frozen=True)
class FlatBandReport:
    energies: Tuple[FlatBandEnergy, ...]
    method: str
    gcd: Optional[EnergyPoly]

    @property
    def gcd_degree(self) -> int:
        return self.gcd.degree if self.gcd is not None else 0

    def values(self) -> list:
        return [e.energy for e in self.energies]


def flat_band_energies(f: FiberMatrix) -> FlatBandReport:
    """Roots of the gcd of all z-coefficients of the characteristic determinant"""
    if not f.exact:
        raise BackendMismatch("exact flat-band detection needs an exact fiber")
    split = char_split(f)
    gcd = gcd_energy(split.parts.values())
    energies: List[FlatBandEnergy] = []
    if gcd.degree >= 1:
        roots = roots_energy(gcd)
        for root in dict.fromkeys(roots.exact):
            residuals = {alpha: q.evaluate(root) for alpha, q in split.parts.items()}
            energies.append(FlatBandEnergy(root, True, residuals))
        exact_numeric = [to_numeric(r) for r in roots.exact]
        for root in roots.numeric:
            if any(abs(root - e) <= NUMERIC_DUPLICATE_TOL * (1 + abs(e)) for e in exact_numeric):
                continue
            if any(abs(root - e.energy) <= NUMERIC_DUPLICATE_TOL * (1 + abs(e.energy))
                   for e in energies if not e.exact):
                continue
            residuals = {alpha: abs(q.evaluate(root)) for alpha, q in split.parts.items()}
            energies.append(FlatBandEnergy(root, False, residuals))
    logger.info(f"Flat-band gcd has degree {max(gcd.degree, 0)}; {len(energies)} flat band(s)")
    return FlatBandReport(tuple(energies), "exact", gcd)


def _shift_span(f: FiberMatrix) -> int:
    span = 0
    for row in f.entries:
        for entry in row:
            for k in range(f.d):
                exponents = [e[k] for e in entry.terms]
                if exponents:
                    span = max(span, max(exponents) - min(exponents))
    return span


def polyannulus_points(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random points with moduli in [1/2, 2] (log-uniform) and uniform phases"""
    moduli = np.exp(rng.uniform(np.log(0.5), np.log(2.0), size=(count, d)))
    phases = rng.uniform(0, 2 * np.pi, size=(count, d))
    return moduli * np.exp(1j * phases)


def sampled_determinants(f: FiberMatrix, energy, points: np.ndarray) -> np.ndarray:
    shift = to_numeric(energy) * np.eye(f.size)
    return np.array([np.linalg.det(f.at(z) - shift) for z in points])


def sampled_threshold(f: FiberMatrix, energy) -> float:
    return 1e-8 * (1 + abs(to_numeric(energy))) ** f.size * (1 + f.weight_bound) ** f.size


def is_flat_band(f: FiberMatrix, energy, method: str = 'exact', seed: Optional[int] = None,
                 samples: Optional[int] = None) -> bool:
    """Whether energy is an eigenvalue of h(z) for every z"""
    if method == 'exact':
        if not f.exact or not is_exact(energy):
            raise BackendMismatch("exact flat-band test needs an exact fiber and an exact energy")
        split = char_split(f)
        return all(q.evaluate(energy) == 0 for q in split.parts.values())
    if method != 'sampled':
        raise ValueError(f"unknown flat-band method: {method}")
    seed = get_config().seed if seed is None else seed
    count = samples or max(2 * _shift_span(f) + 1, 3)
    points = polyannulus_points(f.d, count, np.random.default_rng(seed))
    dets = sampled_determinants(f, energy, points)
    return bool(np.all(np.abs(dets) <= sampled_threshold(f, energy)))


def uniform_rational_sampler(n: int, low: int = -10, high: int = 10, denominator: Optional[int] = None,
                             ties: Sequence[Tuple[int, int]] = ()) -> Callable[[np.random.Generator], Potential]:
    """
    Potentials with independent uniform rationals k/denominator in [low, high].

    ties lists 1-based vertex pairs (a, b) forced to V_b = V_a.
    """
    denominator = denominator or get_config().sample_denominator

    def sample(rng: np.random.Generator) -> Potential:
        numerators = rng.integers(low * denominator, high * denominator, size=n, endpoint=True)
        values = [GaussianRational(Fraction(int(k), denominator)) for k in numerators]
        for a, b in ties:
            values[b - 1] = values[a - 1]
        return Potential(tuple(values))

    return sample


@dataclass
class ProbeSummary:
    seed: int
    trials: int
    hits: int = 0
    witnesses: List[Tuple[Potential, list]] = field(default_factory=list)


def genericity_probe(g: ValidatedGraph, sampler: Callable[[np.random.Generator], Potential], trials: int,
                     seed: Optional[int] = None) -> ProbeSummary:
    """Run the exact detector on sampled potentials and collect every hit"""
    seed = get_config().seed if seed is None else seed
    rng = np.random.default_rng(seed)
    events = EventLogger()
    summary = ProbeSummary(seed=seed, trials=trials)
    for trial in range(trials):
        potential = sampler(rng)
        report = flat_band_energies(build_fiber(g, potential))
        if report.energies:
            summary.hits += 1
            summary.witnesses.append((potential, report.values()))
            events.log_event("PROBE_HIT", f"trial {trial}: V={[str(v) for v in potential.values]} "
                                          f"energies={[str(e) for e in report.values()]}")
    logger.info(f"Genericity probe: {summary.hits}/{trials} potentials with flat bands (seed {seed})")
    return summary

"""
Extremal and symmetric extremal loops, non-cancelability, and the
certificate that rules out a flat band.

A certificate is a (footprint, quasi) class at order L (or L+1 for the
symmetric branch) whose total contribution is exactly nonzero: the
eps^order coefficient of lambda_j then carries a z^quasi term for every
generic potential, so lambda_j is not constant in z.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..core.config import get_config
from ..core.errors import EnumerationMismatch, NoneFound, NoNonzeroQuasiLoop, ObstructionNotFound
from ..core.events import EventLogger
from ..graph.model import LatticeVector, ValidatedGraph
from .configs import Footprint, FootprintCap, LoopConfig, _EnumerationGuard, _simple_loops_of_length, enumerate_configs
from .series import ResummedTable, resummed_table

logger = logging.getLogger(__name__)


def _nonzero(shift: LatticeVector) -> bool:
    return any(shift)


def is_symmetric_footprint(footprint: Footprint) -> bool:
    """Exactly one element of multiplicity 1, every other of multiplicity 2"""
    singles = sum(1 for _, m in footprint if m == 1)
    return singles == 1 and all(m in (1, 2) for _, m in footprint)


@dataclass(frozen=True)
class Certificate:
    base: int
    L: int
    branch: str
    footprint: Footprint
    quasi: LatticeVector
    totalcont: object
    ties: Tuple[Tuple[Footprint, LatticeVector], ...] = ()

    @property
    def order(self) -> int:
        """Power of eps whose coefficient carries the certificate"""
        return self.L if self.branch == "extremal" else self.L + 1


@dataclass
class ExtremalReport:
    base: int
    L: int
    extremals: List[LoopConfig]
    symmetric_extremals: List[LoopConfig] = field(default_factory=list)
    certificate: Optional[Certificate] = None


def _config_count_with_quasi(table: ResummedTable) -> int:
    return sum(e.configs for (_, quasi), e in table.entries.items() if _nonzero(quasi))


def extremal_search(g: ValidatedGraph, j: int, max_len: Optional[int] = None) -> ExtremalReport:
    """
    Minimal length L of a j-loop with nonzero quasimomentum, and the simple
    loops of that length with the fewest distinct footprint elements.

    Every shorter configuration is built from simple loops with zero
    quasimomentum, so the nonzero-quasi configurations of length L are
    exactly the simple ones; the aggregated table confirms this.
    """
    max_len = max_len or get_config().max_loop_length
    guard = _EnumerationGuard(None)
    unbounded = FootprintCap(None)
    for length in range(1, max_len + 1):
        loops = (LoopConfig(loop) for loop in _simple_loops_of_length(g, j, length, unbounded, guard))
        candidates = [cfg for cfg in loops if _nonzero(cfg.stats.quasi)]
        if not candidates:
            continue
        fewest = min(c.stats.distinct for c in candidates)
        extremals = [c for c in candidates if c.stats.distinct == fewest]

        table = resummed_table(g, j, length)
        counted = _config_count_with_quasi(table)
        if counted != len(candidates):
            details = (f"L={length}: {len(candidates)} simple loops with nonzero quasi "
                       f"but {counted} configurations")
            EventLogger().log_event("EXTREMAL_COUNT_MISMATCH", details, j)
            raise EnumerationMismatch(f"extremal search at vertex {j}, {details}")
        logger.info(f"Extremal search j={j}: L={length}, {len(extremals)} extremal loop(s)")
        return ExtremalReport(j, length, extremals)
    raise NoNonzeroQuasiLoop(f"no j-loop with nonzero quasimomentum up to length {max_len} at vertex {j}")


def symmetric_extremal_search(g: ValidatedGraph, j: int) -> List[LoopConfig]:
    """Minimal-length configurations with nonzero quasi and a symmetric footprint"""
    for length in range(2, 2 * g.n - 1, 2):
        found = [
            cfg for cfg in enumerate_configs(g, j, length, cap=2)
            if _nonzero(cfg.stats.quasi) and is_symmetric_footprint(cfg.stats.footprint)
        ]
        if found:
            logger.debug(f"Symmetric extremal search j={j}: {len(found)} configuration(s) of length {length}")
            return found
    raise NoneFound(f"no symmetric extremal configuration at vertex {j}")


def non_cancelable_check(g: ValidatedGraph, j: int, cfg: LoopConfig) -> Tuple[bool, List[LoopConfig]]:
    """Whether cfg is the only configuration of its length, footprint and quasimomentum"""
    stats = cfg.stats
    cap = dict(stats.footprint)
    own = cfg.encode()
    competitors = [
        other for other in enumerate_configs(g, j, stats.length, cap=cap)
        if other.stats.footprint == stats.footprint and other.stats.quasi == stats.quasi
        and other.encode() != own
    ]
    return not competitors, competitors


def _certificate_key(item):
    (footprint, quasi), _ = item
    return (len(footprint), footprint, tuple(-a for a in quasi))


def _norm(quasi: LatticeVector) -> float:
    return math.sqrt(sum(a * a for a in quasi))


def _extremal_certificate(g: ValidatedGraph, j: int, L: int) -> Optional[Certificate]:
    table = resummed_table(g, j, L)
    live = [(key, e) for key, e in table.entries.items() if _nonzero(key[1]) and not e.cancelled]
    if not live:
        return None
    (footprint, quasi), entry = min(live, key=_certificate_key)
    return Certificate(j, L, "extremal", footprint, quasi, entry.totalcont)


def _symmetric_certificate(g: ValidatedGraph, j: int, L: int) -> Optional[Certificate]:
    table = resummed_table(g, j, L + 1, cap=2)
    live = [
        (key, e) for key, e in table.entries.items()
        if _nonzero(key[1]) and not e.cancelled and is_symmetric_footprint(key[0])
    ]
    if not live:
        return None
    longest = max(_norm(key[1]) for key, _ in live)
    widest = [(key, e) for key, e in live if math.isclose(_norm(key[1]), longest)]
    (footprint, quasi), entry = min(widest, key=_certificate_key)
    ties = tuple(sorted(key for key, _ in widest if key != (footprint, quasi)))
    if ties:
        logger.info(f"Symmetric certificate j={j}: {len(ties) + 1} classes share |quasi|={longest:.6g}")
    return Certificate(j, L, "symmetric", footprint, quasi, entry.totalcont, ties)


def verify_obstruction(g: ValidatedGraph, j: int, max_len: Optional[int] = None) -> Certificate:
    """Exactly nonzero (footprint, quasi) class at order L, else a symmetric one at order L+1"""
    L = extremal_search(g, j, max_len).L
    certificate = _extremal_certificate(g, j, L) or _symmetric_certificate(g, j, L)
    if certificate is None:
        EventLogger().log_event("OBSTRUCTION_NOT_FOUND",
                                f"every class cancels at orders {L} and {L + 1}", j)
        raise ObstructionNotFound(f"no nonzero class at orders {L} or {L + 1} for vertex {j}")
    logger.info(f"Certificate j={j}: branch {certificate.branch}, footprint {certificate.footprint}, "
                f"quasi {certificate.quasi}")
    return certificate


def certify_all(g: ValidatedGraph, max_len: Optional[int] = None) -> List[Certificate]:
    return [verify_obstruction(g, j, max_len) for j in range(1, g.n + 1)]


def extremal_report(g: ValidatedGraph, j: int, max_len: Optional[int] = None) -> ExtremalReport:
    """extremal_search plus the symmetric candidates of length L+1 and the certificate"""
    report = extremal_search(g, j, max_len)
    report.symmetric_extremals = [
        cfg for cfg in enumerate_configs(g, j, report.L + 1, cap=2)
        if _nonzero(cfg.stats.quasi) and is_symmetric_footprint(cfg.stats.footprint)
    ]
    try:
        report.certificate = verify_obstruction(g, j, max_len)
    except ObstructionNotFound:
        report.certificate = None
    return report


@dataclass
class DisjunctionResult:
    """Which branch of the extremal-loop theorem holds at a base vertex"""

    base: int
    L: int
    branch: Optional[str]
    witnesses: List[LoopConfig]
    competitors: Dict[str, List[LoopConfig]] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.branch is not None


def theorem_disjunction(g: ValidatedGraph, j: int, max_len: Optional[int] = None) -> DisjunctionResult:
    """
    Either every extremal loop is non-cancelable, or some symmetric
    configuration of length L+1 with nonzero quasi is.
    """
    report = extremal_search(g, j, max_len)
    competitors: Dict[str, List[LoopConfig]] = {}
    all_unique = True
    for cfg in report.extremals:
        unique, others = non_cancelable_check(g, j, cfg)
        if not unique:
            all_unique = False
            competitors[str(cfg)] = others
    if all_unique:
        return DisjunctionResult(j, report.L, "extremal", report.extremals)

    for cfg in enumerate_configs(g, j, report.L + 1, cap=2):
        if not _nonzero(cfg.stats.quasi) or not is_symmetric_footprint(cfg.stats.footprint):
            continue
        unique, others = non_cancelable_check(g, j, cfg)
        if unique:
            return DisjunctionResult(j, report.L, "symmetric", [cfg], competitors)
        competitors[str(cfg)] = others

    EventLogger().log_event("THEOREM_DISJUNCTION_FAILED",
                            f"L={report.L}; cancelable: {sorted(competitors)}", j)
    return DisjunctionResult(j, report.L, None, [], competitors)

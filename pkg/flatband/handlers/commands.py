"""
Verb dispatch for the command-line front-end.
"""

import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..algebra.scalars import GaussianRational
from ..core.config import get_config
from ..core.errors import FlatbandError, ParseError
from ..graph.connectivity import is_gamma_connected, is_multi_connected
from ..graph.model import ValidatedGraph, is_self_adjoint, spec_digest
from ..loops.extremal import certify_all, extremal_report, theorem_disjunction
from ..loops.series import resummed_table, series_vs_eigenvalue_check
from ..spectral.floquet import band_sample, build_fiber, uniform_grid
from ..spectral.flatband import (
    flat_band_energies, genericity_probe, is_flat_band, polyannulus_points, uniform_rational_sampler,
)
from ..storage import reports
from ..storage.loader import load_graph

logger = logging.getLogger(__name__)

VERBS = ('validate', 'connectivity', 'bands', 'flatband', 'loops', 'extremal', 'certify', 'series-check', 'probe')

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_INPUT_ERROR = 2


@dataclass
class Command:
    verb: str
    input: str
    options: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None

    def option(self, name: str, default=None):
        value = self.options.get(name)
        return default if value is None else value


def _check_options(cmd: Command):
    if cmd.verb not in VERBS:
        raise ParseError(f"unknown verb '{cmd.verb}'", reason="UnknownVerb")
    for name in ('base', 'order', 'trials', 'grid'):
        value = cmd.options.get(name)
        if value is not None and value < 1:
            raise ParseError(f"--{name} must be positive, got {value}", reason="BadOption", field=name)
    grid = cmd.options.get('grid')
    if grid is not None and grid % 2 == 0:
        raise ParseError(f"--grid must be odd, got {grid}", reason="BadOption", field="grid")


def _parse_epsilon(text: str, exact: bool):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--epsilon must be a number, got {text!r}", reason="BadOption", field="epsilon")
    return GaussianRational(value) if exact else float(value)


def _bases(cmd: Command, g: ValidatedGraph):
    base = cmd.option('base')
    if base is not None and base > g.n:
        raise ParseError(f"--base {base} outside 1..{g.n}", reason="BadOption", field="base")
    return [base] if base is not None else list(range(1, g.n + 1))


def _json(cmd: Command, kind: str, document: dict, g: ValidatedGraph) -> str:
    return reports.render_json(kind, document, cmd.option('seed', get_config().seed), spec_digest(g))


def _validate(cmd: Command, g: ValidatedGraph) -> str:
    document = {
        "valid": True,
        "d": g.d,
        "n": g.n,
        "edge_terms": len(g.edges),
        "self_adjoint": is_self_adjoint(g),
    }
    return _json(cmd, "validate", document, g)


def _connectivity(cmd: Command, g: ValidatedGraph) -> str:
    connected, certificate = is_gamma_connected(g)
    multi, witness = is_multi_connected(g)
    document = {
        "gamma_connected": connected,
        "components": certificate["components"],
        "sublattice_basis": [list(b) for b in certificate["sublattice_basis"] or []],
        "multi_connected": multi,
        "multi_edges": [{"pair": list(pair), "shifts": [list(s) for s in shifts]} for pair, shifts in witness],
    }
    return _json(cmd, "connectivity", document, g)


def _bands(cmd: Command, g: ValidatedGraph) -> str:
    epsilon = cmd.option('epsilon')
    fiber = build_fiber(g, epsilon=_parse_epsilon(epsilon, g.exact) if epsilon is not None else None)
    sample = band_sample(fiber, uniform_grid(g.d, cmd.option('grid')))
    return reports.render_bands_csv(sample)


def _flatband(cmd: Command, g: ValidatedGraph) -> str:
    fiber = build_fiber(g)
    if cmd.option('method', 'exact') == 'exact':
        return _json(cmd, "flatband", reports.flatband_document(flat_band_energies(fiber)), g)

    # Sampled: every flat band is an eigenvalue at any single point
    seed = cmd.option('seed', get_config().seed)
    point = polyannulus_points(g.d, 1, np.random.default_rng(seed))[0]
    candidates = []
    for energy in np.linalg.eigvals(fiber.at(point)):
        energy = complex(energy)
        if any(abs(energy - e) <= 1e-7 * (1 + abs(e)) for e, _ in candidates):
            continue
        candidates.append((energy, is_flat_band(fiber, energy, method='sampled', seed=seed + 1)))
    return _json(cmd, "flatband", reports.sampled_flatband_document(candidates), g)


def _loops(cmd: Command, g: ValidatedGraph) -> str:
    base = _bases(cmd, g)[0]
    table = resummed_table(g, base, cmd.option('order', 1))
    return _json(cmd, "loops", reports.loop_table_document(table), g)


def _extremal(cmd: Command, g: ValidatedGraph) -> str:
    documents = [
        reports.extremal_document(extremal_report(g, j), theorem_disjunction(g, j))
        for j in _bases(cmd, g)
    ]
    return _json(cmd, "extremal", {"reports": documents}, g)


def _certify(cmd: Command, g: ValidatedGraph) -> str:
    certificates = certify_all(g)
    return _json(cmd, "certify", {"certificates": [reports.certificate_document(c) for c in certificates]}, g)


def _series_check(cmd: Command, g: ValidatedGraph) -> str:
    report = series_vs_eigenvalue_check(g, g.potential, cmd.option('base', 1), cmd.option('order', 1))
    return _json(cmd, "series-check", reports.convergence_document(report), g)


def _probe(cmd: Command, g: ValidatedGraph) -> str:
    summary = genericity_probe(g, uniform_rational_sampler(g.n), cmd.option('trials', 100), cmd.option('seed'))
    return _json(cmd, "probe", reports.probe_document(summary), g)


HANDLERS: Dict[str, Callable[[Command, ValidatedGraph], str]] = {
    'validate': _validate,
    'connectivity': _connectivity,
    'bands': _bands,
    'flatband': _flatband,
    'loops': _loops,
    'extremal': _extremal,
    'certify': _certify,
    'series-check': _series_check,
    'probe': _probe,
}


def run(cmd: Command) -> int:
    """Execute one command; 0 on success, 1 on a domain error, 2 on an input error"""
    try:
        _check_options(cmd)
        g = load_graph(cmd.input)
        text = HANDLERS[cmd.verb](cmd, g)
        reports.emit(text, cmd.output)
    except ParseError as e:
        logger.error(f"Input error: {e}")
        print(str(e), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except FlatbandError as e:
        logger.error(f"{cmd.verb} failed: {e}")
        print(str(e), file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        print(f"OutputError: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    logger.info(f"{cmd.verb} {cmd.input}: done")
    return EXIT_OK

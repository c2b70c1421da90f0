"""
Report assembly and emission (JSON documents and band CSV tables).
"""

import csv
import io
import json
import logging
import sys
from typing import Optional

from ..core.errors import FlatbandError
from ..loops.configs import LoopConfig
from ..loops.extremal import Certificate, DisjunctionResult, ExtremalReport
from ..loops.series import ConvergenceReport, ResummedTable
from ..spectral.floquet import BandSample
from ..spectral.flatband import FlatBandReport, ProbeSummary
from ..utils.helpers import footprint_to_json, format_float, scalar_to_json, shift_to_json
from ..utils.validation import validate_report

logger = logging.getLogger(__name__)


def flatband_document(report: FlatBandReport) -> dict:
    return {
        "method": report.method,
        "gcd_degree": max(report.gcd_degree, 0),
        "flat_bands": [{"energy": scalar_to_json(e.energy), "exact": e.exact} for e in report.energies],
    }


def sampled_flatband_document(candidates) -> dict:
    """candidates: (energy, verdict) pairs from the sampled test"""
    return {
        "method": "sampled",
        "gcd_degree": 0,
        "flat_bands": [{"energy": scalar_to_json(e), "exact": False} for e, ok in candidates if ok],
    }


def loop_table_document(table: ResummedTable) -> dict:
    return {
        "base": table.base,
        "order": table.order,
        "entries": [
            {
                "footprint": footprint_to_json(footprint),
                "quasi": shift_to_json(quasi),
                "totalcont": scalar_to_json(entry.totalcont),
                "configs": entry.configs,
            }
            for (footprint, quasi), entry in table.sorted_entries()
        ],
    }


def certificate_document(certificate: Certificate) -> dict:
    document = {
        "base": certificate.base,
        "L": certificate.L,
        "branch": certificate.branch,
        "footprint": footprint_to_json(certificate.footprint),
        "quasi": shift_to_json(certificate.quasi),
        "totalcont": scalar_to_json(certificate.totalcont),
    }
    if certificate.ties:
        document["ties"] = [{"footprint": footprint_to_json(f), "quasi": shift_to_json(q)}
                            for f, q in certificate.ties]
    return document


def config_document(cfg: LoopConfig) -> dict:
    stats = cfg.stats
    return {
        "loop": str(cfg),
        "length": stats.length,
        "footprint": footprint_to_json(stats.footprint),
        "quasi": shift_to_json(stats.quasi),
        "sign": stats.sign,
    }


def extremal_document(report: ExtremalReport, disjunction: Optional[DisjunctionResult] = None) -> dict:
    document = {
        "base": report.base,
        "L": report.L,
        "extremals": [config_document(c) for c in report.extremals],
        "symmetric_extremals": [config_document(c) for c in report.symmetric_extremals],
        "certificate": certificate_document(report.certificate) if report.certificate else None,
    }
    if disjunction is not None:
        document["theorem_branch"] = disjunction.branch
    return document


def convergence_document(report: ConvergenceReport) -> dict:
    return {
        "base": report.base,
        "order": report.order,
        "epsilons": list(report.epsilons),
        "errors": list(report.errors),
        "slope": report.slope,
        "exact": report.exact,
    }


def probe_document(summary: ProbeSummary) -> dict:
    return {
        "trials": summary.trials,
        "hits": summary.hits,
        "witnesses": [
            {"potential": [scalar_to_json(v) for v in potential.values],
             "energies": [scalar_to_json(e) for e in energies]}
            for potential, energies in summary.witnesses
        ],
    }


def render_json(kind: str, document: dict, seed: int, digest: str) -> str:
    """Stable JSON: sorted keys, seed and spec digest echoed"""
    document = dict(document, seed=seed, spec_digest=digest)
    if not validate_report(kind, document):
        raise FlatbandError(f"{kind} report failed its schema check")
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def render_bands_csv(sample: BandSample) -> str:
    """theta_1..theta_d, then E_1..E_N (real parts and imaginary parts when not self-adjoint)"""
    d = len(sample.grid[0]) if sample.grid else 0
    size = sample.values.shape[1] if sample.values.ndim == 2 else 0
    header = [f"theta_{k}" for k in range(1, d + 1)]
    if sample.hermitian:
        header += [f"E_{k}" for k in range(1, size + 1)]
    else:
        header += [f"{part}_E_{k}" for k in range(1, size + 1) for part in ("re", "im")]

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for theta, row in zip(sample.grid, sample.values):
        cells = [format_float(t) for t in theta]
        if sample.hermitian:
            cells += [format_float(float(e.real)) for e in row]
        else:
            cells += [format_float(float(x)) for e in row for x in (e.real, e.imag)]
        writer.writerow(cells)
    return buffer.getvalue()


def emit(text: str, output: Optional[str] = None):
    """Write to a file, or standard output when no path is given"""
    if output is None:
        sys.stdout.write(text)
        return
    with open(output, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f"Wrote report to {output}")

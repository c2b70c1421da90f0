"""
Reading graph-spec documents from disk.
"""

import json
import logging
from typing import Any, Dict

from ..core.errors import ParseError
from ..graph.model import EdgeTerm, PeriodicGraphSpec, Potential, ValidatedGraph, autosymmetrize, validate_spec
from ..utils.helpers import scalar_from_json
from ..utils.validation import validate_spec_document

logger = logging.getLogger(__name__)


def read_document(path: str) -> Dict[str, Any]:
    """Parse a JSON file, reporting the line of a syntax error"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}", reason="FileNotFound")
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg} (line {e.lineno}, column {e.colno})", field=f"line {e.lineno}")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}", reason="FileNotReadable")


def spec_from_document(document: Dict[str, Any]) -> PeriodicGraphSpec:
    """Schema-checked document to a raw spec; autosymmetrize completes missing partners"""
    validate_spec_document(document)
    d, n = document["d"], document["n"]

    edges = []
    for k, item in enumerate(document["edges"]):
        if len(item["shift"]) != d:
            raise ParseError(f"shift {item['shift']} has length {len(item['shift'])} but d = {d}",
                             reason="RankMismatch", field=f"edges/{k}/shift")
        weight = scalar_from_json(item["weight"], field=f"edges/{k}/weight")
        edges.append(EdgeTerm(item["from"], item["to"], tuple(item["shift"]), weight))

    values = [scalar_from_json(v, field=f"potential/{k}") for k, v in enumerate(document["potential"])]
    if len(values) != n:
        raise ParseError(f"potential has {len(values)} values for n = {n} vertices",
                         reason="SizeMismatch", field="potential")
    if document.get("autosymmetrize", False):
        edges = autosymmetrize(edges)
    return PeriodicGraphSpec(d, n, tuple(edges), Potential(tuple(values)))


def load_spec(path: str) -> PeriodicGraphSpec:
    spec = spec_from_document(read_document(path))
    logger.info(f"Loaded {path}: d={spec.d}, N={spec.n}, {len(spec.edges)} edge terms")
    return spec


def load_graph(path: str) -> ValidatedGraph:
    """load_spec followed by validate_spec"""
    return validate_spec(load_spec(path))

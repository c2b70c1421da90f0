"""
Validation of graph-spec documents and emitted reports.
"""

import logging
from jsonschema import validate, ValidationError

from ..core.errors import ParseError

logger = logging.getLogger(__name__)

RATIONAL = {"type": "string", "pattern": r"^\s*[-+]?\d+(/\d+)?\s*$"}

SCALAR_SCHEMA = {
    "oneOf": [
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        {
            "type": "object",
            "properties": {"num": RATIONAL, "inum": RATIONAL},
            "required": ["num"],
            "additionalProperties": False
        }
    ]
}

SHIFT_SCHEMA = {"type": "array", "items": {"type": "integer"}}

# Graph-spec input document
GRAPH_SPEC_SCHEMA = {
    "type": "object",
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 0},
        "potential": {"type": "array", "items": SCALAR_SCHEMA},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "from": {"type": "integer"},
                    "to": {"type": "integer"},
                    "shift": SHIFT_SCHEMA,
                    "weight": SCALAR_SCHEMA
                },
                "required": ["from", "to", "shift", "weight"]
            }
        },
        "autosymmetrize": {"type": "boolean"},
        "description": {"type": "string"}
    },
    "required": ["d", "n", "potential", "edges"]
}

FOOTPRINT_SCHEMA = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
}

ENVELOPE = {
    "seed": {"type": "integer"},
    "spec_digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"}
}

FLATBAND_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "flat_bands": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"energy": SCALAR_SCHEMA, "exact": {"type": "boolean"}},
                "required": ["energy", "exact"]
            }
        },
        "gcd_degree": {"type": "integer"},
        "method": {"enum": ["exact", "sampled"]},
        **ENVELOPE
    },
    "required": ["flat_bands", "gcd_degree", "method"]
}

LOOP_TABLE_SCHEMA = {
    "type": "object",
    "properties": {
        "base": {"type": "integer", "minimum": 1},
        "order": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "footprint": FOOTPRINT_SCHEMA,
                    "quasi": SHIFT_SCHEMA,
                    "totalcont": SCALAR_SCHEMA,
                    "configs": {"type": "integer", "minimum": 1}
                },
                "required": ["footprint", "quasi", "totalcont", "configs"]
            }
        },
        **ENVELOPE
    },
    "required": ["base", "order", "entries"]
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "properties": {
        "base": {"type": "integer", "minimum": 1},
        "L": {"type": "integer", "minimum": 1},
        "branch": {"enum": ["extremal", "symmetric"]},
        "footprint": FOOTPRINT_SCHEMA,
        "quasi": SHIFT_SCHEMA,
        "totalcont": SCALAR_SCHEMA
    },
    "required": ["base", "L", "branch", "footprint", "quasi", "totalcont"]
}

CERTIFY_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "certificates": {"type": "array", "items": CERTIFICATE_SCHEMA},
        **ENVELOPE
    },
    "required": ["certificates"]
}

REPORT_SCHEMAS = {
    "flatband": FLATBAND_REPORT_SCHEMA,
    "loops": LOOP_TABLE_SCHEMA,
    "certify": CERTIFY_REPORT_SCHEMA,
}


def _path(error: ValidationError) -> str:
    return "/".join(str(p) for p in error.absolute_path)


def validate_spec_document(document):
    """Validate a graph-spec document, raising ParseError with the failing field"""
    try:
        validate(document, GRAPH_SPEC_SCHEMA)
    except ValidationError as e:
        logger.error(f"Invalid graph spec at '{_path(e)}': {e.message}")
        raise ParseError(e.message, field=_path(e))


def validate_report(kind, report):
    """Validate an outgoing report; reports without a schema pass through"""
    schema = REPORT_SCHEMAS.get(kind)
    if schema is None:
        return True
    try:
        validate(report, schema)
        return True
    except ValidationError as e:
        logger.error(f"Invalid {kind} report at '{_path(e)}': {e.message}")
        return False

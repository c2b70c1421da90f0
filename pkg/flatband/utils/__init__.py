"""
Utility functions for serialization and validation.
"""

from .helpers import footprint_to_json, format_float, scalar_from_json, scalar_to_json
from .validation import validate_report, validate_spec_document

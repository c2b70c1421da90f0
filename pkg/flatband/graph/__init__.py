"""
Periodic graph model: quotient data, validation and connectivity.
"""

from .model import (
    EdgeTerm, PeriodicGraphSpec, Potential, QuotientGraph, ValidatedGraph,
    autosymmetrize, is_self_adjoint, quotient_matrices, spec_digest, to_document, validate_spec,
)
from .connectivity import is_gamma_connected, is_multi_connected

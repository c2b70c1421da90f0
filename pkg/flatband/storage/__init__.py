"""
Storage module: graph-spec input and report output.
"""

from .loader import load_graph, load_spec, spec_from_document
from .reports import emit, render_bands_csv, render_json

__all__ = ['load_graph', 'load_spec', 'spec_from_document', 'emit', 'render_bands_csv', 'render_json']

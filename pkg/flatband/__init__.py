"""
Flat-band toolkit for Z^d-periodic weighted graphs: exact flat-band detection
from the Floquet fiber, the loop expansion of eigenvalue branches, and
extremal-loop certificates that exclude flat bands.
"""

from .main import main

__version__ = "1.0.0"

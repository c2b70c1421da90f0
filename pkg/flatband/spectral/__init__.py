"""
Spectral side: fiber matrices, band sampling and flat-band detection.
"""

from .floquet import (
    BandSample, FiberMatrix, band_endpoints, band_sample, build_fiber, eval_fiber,
    finite_torus_check, uniform_grid,
)
from .flatband import (
    FlatBandReport, ProbeSummary, flat_band_energies, genericity_probe, is_flat_band,
    uniform_rational_sampler,
)

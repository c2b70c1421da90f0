"""
Exact algebra: scalars, Laurent polynomials, energy polynomials, determinants.
"""

from .scalars import GaussianRational, exact, to_numeric
from .laurent import LaurentPoly, lp_arith, lp_eval
from .energy import EnergyPoly, gcd_energy, roots_energy
from .determinant import CharSplit, char_split, det_laurent

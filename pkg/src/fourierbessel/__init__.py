"""Fourier-Bessel (Hankel) transform toolkit.

Radial quadrature grids, the order-``alpha`` Hankel transform as a dense
operator, generalized Bessel translation and convolution, time/frequency
localization with annihilating-pair certificates, density-thin sets, a
Littlewood-Paley low/high frequency split, and local/Heisenberg uncertainty
checks.
"""

__version__ = "0.1.0"

from .grid import RadialFunction, RadialGrid, make_adapted_grid, make_grid
from .intervals import IntervalSet, lebesgue, mu_alpha
from .localization import annihilation_constants, hs_bound, op_norm
from .local_uncertainty import faris_K, faris_Kprime, verify_local
from .lpdecomp import LittlewoodPaley
from .special import bessel_j, kappa_alpha
from .thin import is_thin, make_thin_example
from .transform import HankelTransform, hankel_matrix, hankel_transform
from .translation import convolve, translate

__all__ = [
    "__version__",
    "RadialFunction",
    "RadialGrid",
    "make_grid",
    "make_adapted_grid",
    "IntervalSet",
    "lebesgue",
    "mu_alpha",
    "annihilation_constants",
    "hs_bound",
    "op_norm",
    "faris_K",
    "faris_Kprime",
    "verify_local",
    "LittlewoodPaley",
    "bessel_j",
    "kappa_alpha",
    "is_thin",
    "make_thin_example",
    "HankelTransform",
    "hankel_matrix",
    "hankel_transform",
    "convolve",
    "translate",
]

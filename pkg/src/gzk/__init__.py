"""Pseudo-spectral toolkit for the 3D generalized Zakharov-Kuznetsov equation

    u_t + d_x Lap u + u^k u_x = 0

on a periodic box: Fourier multipliers, blow-up data, norms, an
integrating-factor RK4 solver and numerical audits of linear estimates.
"""

__version__ = "0.1.0"

from .grid import (Grid3, RealField, SpectralField, dealias_mask, forward_transform,
                   inverse_transform, make_grid)
from .multipliers import apply_propagator, apply_weighted_propagator, dispersion_symbol
from .solver import SolverConfig, duhamel_split, integrate, invariants, picard_iterate

__all__ = [
    "Grid3", "RealField", "SpectralField", "make_grid", "forward_transform",
    "inverse_transform", "dealias_mask", "apply_propagator", "apply_weighted_propagator",
    "dispersion_symbol", "SolverConfig", "integrate", "duhamel_split", "invariants",
    "picard_iterate",
]

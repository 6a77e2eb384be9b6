"""Weakly bound electron states in a uniform magnetic field with a square well.

Library layout:

- params:     physical vs. natural units, (xi, lambda_t, s)
- specfun:    Landau-basis Laguerre functions, Hurwitz zeta
- matel:      well matrix elements (first order and quadrature)
- spectrum:   spectral equation, bound-state roots, closed-form level
- boundstate: wavefunction, normalization, probability current
- oracle:     finite-difference diagonalization cross-check
- cli:        command-line front end (`magwell ...`)
"""

from .boundstate import (BoundState, CylindricalField, current_fd, current_field,
                         norm_report, normalization_constant, psi_closed,
                         psi_integral_check)
from .errors import ConfigError, MagwellError, NoBoundStateError, NumericsError
from .matel import well_element_firstorder, well_element_quadrature
from .oracle import (ConvergenceReport, CylindricalGrid, DiscreteHamiltonian,
                     LanczosResult, assemble, converge, lowest_eigenpair,
                     lowest_eigenvalue)
from .params import (DimensionlessParams, PhysicalParams, from_physical,
                     to_physical)
from .specfun import hurwitz_zeta, laguerre_fn
from .spectrum import (TRUNCATED, ZETA_REGULARIZED, SpectralConfig, SpectralRoot,
                       coefficient_profile, e_min_closed_form, solve_spectrum,
                       spectral_sum)

__version__ = "0.1.0"

__all__ = [
    "BoundState", "ConfigError", "ConvergenceReport", "CylindricalField",
    "CylindricalGrid", "DimensionlessParams", "DiscreteHamiltonian",
    "LanczosResult", "MagwellError", "NoBoundStateError", "NumericsError",
    "PhysicalParams", "SpectralConfig", "SpectralRoot", "TRUNCATED",
    "ZETA_REGULARIZED", "assemble", "coefficient_profile", "converge",
    "current_fd", "current_field", "e_min_closed_form", "from_physical",
    "hurwitz_zeta", "laguerre_fn", "lowest_eigenpair", "lowest_eigenvalue",
    "norm_report", "normalization_constant", "psi_closed", "psi_integral_check",
    "solve_spectrum", "spectral_sum", "to_physical", "well_element_firstorder",
    "well_element_quadrature", "__version__",
]

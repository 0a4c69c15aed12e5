"""Time-harmonic acoustics in viscous gases on separable domains.

The package solves the exact viscous model per tangential Fourier mode and
the approximative pressure/velocity models of order 0, 1 and 2 with
impedance (Wentzell-type) wall conditions, builds the boundary-layer
near-field corrector, and measures modelling errors against the exact
solution.
"""

__version__ = "0.1.0"

from .analysis import AnalysisRegion, Discretization, eigenfrequency, \
    fit_slope, modelling_error, run_sweep
from .geometry import Annulus, BoundaryComponent, CutoffSpec, StripTorus, \
    curvature, cutoff_eval, tangential_symbol
from .params import CanonicalPressureCoeffs, CanonicalVelocityCoeffs, \
    MaterialParams, epsilon, pressure_coeffs, velocity_coeffs
from .sources import GaussianGradient, ModalManufactured, ModalSource, \
    boundary_traces, curlcurl_iterate, project_to_modes

__all__ = [
    "AnalysisRegion", "Annulus", "BoundaryComponent",
    "CanonicalPressureCoeffs", "CanonicalVelocityCoeffs", "CutoffSpec",
    "Discretization", "GaussianGradient", "MaterialParams",
    "ModalManufactured", "ModalSource", "StripTorus", "boundary_traces",
    "curvature", "curlcurl_iterate", "cutoff_eval", "eigenfrequency",
    "epsilon", "fit_slope", "modelling_error", "pressure_coeffs",
    "project_to_modes", "run_sweep", "tangential_symbol", "velocity_coeffs",
]

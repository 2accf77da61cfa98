"""Finite-difference momentum and kinetic-energy operators on uniform 1D grids.

Closed-form stencil weights of any order, banded Hermitian operator
assembly with periodic or hard-wall closure, analytic dispersion relations
with their leading error constants, and an exactly solvable bound-state
benchmark (Poschl-Teller well).  The `gridops` CLI exposes the same
functionality as reproducible CSV/JSON tables plus optional figures.
"""

from .dispersion import (
    DispersionCurve,
    ErrorCoefficients,
    LeadingErrorFit,
    delta_eps,
    delta_p,
    dispersion_curve,
    error_coefficients,
    kinetic_dispersion,
    leading_error_fit,
    momentum_dispersion,
    wavevectors,
)
from .grid import GridSpec, PhysScale
from .operators import (
    BandedHermitianOperator,
    apply,
    build_hamiltonian,
    build_kinetic_operator,
    build_momentum_operator,
    inf_norm,
    sample_potential,
    to_dense,
)
from .schrodinger import (
    BoundStates,
    BoundStateSpectrum,
    ConvergenceError,
    ConvergenceTable,
    PoschlTellerPotential,
    exact_poschl_teller_levels,
    scan_vs_M,
    scan_vs_N,
    solve_bound_states,
)
from .stencil import (
    KineticStencil,
    MomentumStencil,
    MAX_ORDER,
    fornberg_weights,
    infinite_order_kinetic_element,
    infinite_order_momentum_element,
    kinetic_weights,
    moment,
    momentum_weights,
    omega,
    sinc_cardinal,
)

__version__ = "0.1.0"

__all__ = [
    "BandedHermitianOperator",
    "BoundStates",
    "BoundStateSpectrum",
    "ConvergenceError",
    "ConvergenceTable",
    "DispersionCurve",
    "ErrorCoefficients",
    "GridSpec",
    "KineticStencil",
    "LeadingErrorFit",
    "MAX_ORDER",
    "MomentumStencil",
    "PhysScale",
    "PoschlTellerPotential",
    "apply",
    "build_hamiltonian",
    "build_kinetic_operator",
    "build_momentum_operator",
    "delta_eps",
    "delta_p",
    "dispersion_curve",
    "error_coefficients",
    "exact_poschl_teller_levels",
    "fornberg_weights",
    "inf_norm",
    "infinite_order_kinetic_element",
    "infinite_order_momentum_element",
    "kinetic_dispersion",
    "kinetic_weights",
    "leading_error_fit",
    "moment",
    "momentum_dispersion",
    "momentum_weights",
    "omega",
    "sample_potential",
    "scan_vs_M",
    "scan_vs_N",
    "sinc_cardinal",
    "solve_bound_states",
    "to_dense",
    "wavevectors",
]

"""Tomographic probability description of a driven harmonic oscillator.

The package integrates the complex classical trajectory that generates
the time dependence of Gaussian and Fock states, evaluates their
quadrature tomograms in arbitrary reference frames, and cross-checks
the analytic forms against wavefunction and phase-space quadrature.
"""

from .analysis import (
    SQUEEZE_TOL,
    SqueezingRecord,
    UncertaintyProducts,
    correlation_coefficient_sq,
    squeezing_report,
    uncertainty_products,
)
from .config import DEFAULT_DOCUMENT, ConfigError, ScenarioConfig, merge_overrides, parse_config
from .evolution import HeisenbergFrame, heisenberg_frame, propagate_tomogram
from .states import (
    ALPHA_MAX,
    HERMITE_MAX_DEGREE,
    PhaseSpaceMoments,
    check_alpha,
    coherent_wavefunction,
    density_matrix,
    fock_wavefunction,
    hermite,
    phase_space_moments,
    vacuum_wavefunction,
)
from .tomography import (
    FrameError,
    Gaussian1D,
    NearSingularFrameError,
    PhaseSpaceGrid,
    QuadratureError,
    QuadratureGrid,
    ReferenceFrame,
    TruncationError,
    bayes_recover,
    gaussian_frame_weight,
    inverse_radon,
    joint_probability,
    optical_to_symplectic,
    optical_tomogram,
    radon_transform,
    symplectic_tomogram,
    tomogram_density,
    tomogram_via_fractional_fourier,
    wigner_from_density,
    wigner_gaussian,
)
from .trajectory import (
    ClassicalTrajectory,
    ConstantProfile,
    FrequencyProfile,
    IntegrationDivergedError,
    PiecewiseConstantProfile,
    ProfileError,
    SinusoidalProfile,
    StepTooCoarseError,
    TabulatedProfile,
    TrajectoryPoint,
    closed_form_grid,
    closed_form_piecewise,
    integrate_trajectory,
    wronskian,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_MAX",
    "DEFAULT_DOCUMENT",
    "HERMITE_MAX_DEGREE",
    "SQUEEZE_TOL",
    "ClassicalTrajectory",
    "ConfigError",
    "ConstantProfile",
    "FrameError",
    "FrequencyProfile",
    "Gaussian1D",
    "HeisenbergFrame",
    "IntegrationDivergedError",
    "NearSingularFrameError",
    "PhaseSpaceGrid",
    "PhaseSpaceMoments",
    "PiecewiseConstantProfile",
    "ProfileError",
    "QuadratureError",
    "QuadratureGrid",
    "ReferenceFrame",
    "ScenarioConfig",
    "SinusoidalProfile",
    "SqueezingRecord",
    "StepTooCoarseError",
    "TabulatedProfile",
    "TrajectoryPoint",
    "TruncationError",
    "UncertaintyProducts",
    "bayes_recover",
    "check_alpha",
    "closed_form_grid",
    "closed_form_piecewise",
    "coherent_wavefunction",
    "correlation_coefficient_sq",
    "density_matrix",
    "fock_wavefunction",
    "gaussian_frame_weight",
    "heisenberg_frame",
    "hermite",
    "integrate_trajectory",
    "inverse_radon",
    "joint_probability",
    "merge_overrides",
    "optical_to_symplectic",
    "optical_tomogram",
    "parse_config",
    "phase_space_moments",
    "propagate_tomogram",
    "radon_transform",
    "squeezing_report",
    "symplectic_tomogram",
    "tomogram_density",
    "tomogram_via_fractional_fourier",
    "uncertainty_products",
    "vacuum_wavefunction",
    "wigner_from_density",
    "wigner_gaussian",
    "wronskian",
]

"""Spectral singularities of point interactions and spherical gain media."""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    DegenerateWavenumber,
    DomainError,
    InvalidParameters,
    NoConvergence,
    NonConvergence,
    OriginError,
    PoleProximityWarning,
    SeedOutOfRegime,
)
from .point_core import (  # noqa: E402
    AmplitudePair,
    MatchingMatrix,
    SpectralKind,
    SpectralPoint,
    Tolerances,
    classify_anomalous,
    m22,
    propagate,
    spectrum,
    transfer_matrix,
)
from .symmetries import PTParameters, build_PT, check_P, check_PT, check_T, pt_classify  # noqa: E402
from .coalescence import critical_epsilons, k_pair, sweep  # noqa: E402
from .specfun import BesselEval, coeff_A, sph_bessel  # noqa: E402
from .gain_sphere import (  # noqa: E402
    GainMedium,
    ModeSolution,
    SphericalResonator,
    enumerate_modes,
    min_radius,
    mode_gain_pert,
    mode_wavelength_pert,
    reflection_amplitude,
    refractive_index,
    scan_reflection,
    solve_mode_exact,
    ss_residual,
)

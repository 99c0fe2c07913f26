"""Spectral singularities of a spherical gain medium.

A homogeneous ball of radius ``a`` and complex refractive index ``n`` is
treated as a complex spherical barrier for transverse spherical waves. Its
field is built from j_nu inside and h^{(1,2)}_nu outside with
``nu = sqrt(5)/2``. Spectral singularities are the real wavenumbers where
the reflection amplitude ``A1/A2`` has a pole.

Units are SI throughout (meters, 1/meters). Conversions to nm and cm^-1
happen only in the CLI.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace

import mpmath
import numpy as np

from .exceptions import NoConvergence, PoleProximityWarning, SeedOutOfRegime
from .specfun import coeff_A, sph_bessel

__all__ = [
    "NU",
    "GainMedium",
    "SphericalResonator",
    "ModeSolution",
    "ReflectionScan",
    "dispersion_factors",
    "refractive_index",
    "refractive_index_linear",
    "reflection_amplitude",
    "reflection_coefficient",
    "ss_residual",
    "ss_residual_asymptotic",
    "index_on_ss_curve",
    "size_on_ss_curve",
    "mode_wavelength_pert",
    "mode_gain_pert",
    "gain_at_wavelength",
    "min_gain",
    "solve_mode_exact",
    "enumerate_modes",
    "min_radius",
    "scan_reflection",
]

# order of the transverse spherical wave
NU = math.sqrt(5.0) / 2.0

LARGE_X = 100.0


@dataclass(frozen=True)
class GainMedium:
    """Doped host with a Lorentzian gain line.

    ``kappa0`` is the imaginary part of the index at the resonance
    wavelength ``lambda0``; it is negative for gain and relates to the gain
    coefficient by ``g0 = -4 pi kappa0 / lambda0``.
    """

    n0: float
    lambda0: float
    gamma_hat: float
    kappa0: float = 0.0

    def __post_init__(self):
        if not self.n0 > 1:
            raise ValueError("background index n0 must exceed 1")
        if not self.lambda0 > 0:
            raise ValueError("lambda0 must be positive")
        if not self.gamma_hat > 0:
            raise ValueError("gamma_hat must be positive")

    @classmethod
    def from_g0(cls, n0, lambda0, gamma_hat, g0):
        return cls(n0, lambda0, gamma_hat, kappa0=-g0 * lambda0 / (4.0 * math.pi))

    @property
    def g0(self):
        return -4.0 * math.pi * self.kappa0 / self.lambda0

    def with_g0(self, g0):
        return replace(self, kappa0=-g0 * self.lambda0 / (4.0 * math.pi))

    def with_kappa0(self, kappa0):
        return replace(self, kappa0=kappa0)

    @property
    def log_contrast(self):
        """ln((n0 + 1) / (n0 - 1))."""
        return math.log((self.n0 + 1.0) / (self.n0 - 1.0))


@dataclass(frozen=True)
class SphericalResonator:
    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class ModeSolution:
    """One optical spectral singularity.

    ``lambda_exact`` is None until the mode has been refined by
    :func:`solve_mode_exact`; ``g0``, ``x``, ``eta`` and ``kappa`` then refer
    to the refined solution.
    """

    m: int
    lambda_pert: float
    lambda_exact: float | None
    g0: float
    x: float
    eta: float
    kappa: float

    @property
    def large_x(self):
        return self.x > LARGE_X


# ---------------------------------------------------------------------------
# dispersion
# ---------------------------------------------------------------------------


def dispersion_factors(gamma_hat, omega_hat):
    """Return the Lorentzian line shape factors (f1, f2)."""
    detune = 1.0 - omega_hat * omega_hat
    denom = detune * detune + (gamma_hat * omega_hat) ** 2
    return gamma_hat * detune / denom, gamma_hat**2 * omega_hat / denom


def refractive_index(lam, medium):
    """Complex refractive index from the full Lorentz-oscillator relation."""
    if not lam > 0:
        raise ValueError("wavelength must be positive")
    w = medium.lambda0 / lam
    wp2 = 2.0 * medium.n0 * medium.gamma_hat * medium.kappa0
    return cmath.sqrt(medium.n0**2 - wp2 / (w * w - 1.0 + 1j * medium.gamma_hat * w))


def refractive_index_linear(lam, medium):
    """(eta, kappa) to first order in kappa0."""
    f1, f2 = dispersion_factors(medium.gamma_hat, medium.lambda0 / lam)
    return medium.n0 + medium.kappa0 * f1, medium.kappa0 * f2


# ---------------------------------------------------------------------------
# scattering by the ball
# ---------------------------------------------------------------------------


def _boundary_values(n, k, a):
    x = k * a
    out = sph_bessel(NU, x)
    inn = sph_bessel(NU, n * x)
    return out, inn


def reflection_amplitude(n, k, a):
    """A1/A2, the ratio of outgoing to incoming spherical wave amplitudes.

    The 1/a terms of the magnetic field matching cancel, which leaves

        A1/A2 = [n h2 j' - j h2'] / [j h1' - n h1 j']

    with h evaluated at ``ka`` and j at ``n k a``. Emits a
    :class:`PoleProximityWarning` when the denominator is numerically zero.
    """
    if not (k > 0 and a > 0):
        raise ValueError("k and a must be positive")
    out, inn = _boundary_values(n, k, a)
    num = n * out.h2 * inn.j_prime - inn.j * out.h2_prime
    den = inn.j * out.h1_prime - n * out.h1 * inn.j_prime
    scale = abs(inn.j * out.h1_prime) + abs(n * out.h1 * inn.j_prime)
    if abs(den) < 1e-13 * scale:
        warnings.warn(
            f"reflection amplitude evaluated at a pole (|den|={abs(den):.3e})",
            PoleProximityWarning,
            stacklevel=2,
        )
    return num / den


def reflection_coefficient(n, k, a):
    return abs(reflection_amplitude(n, k, a)) ** 2


def ss_residual(n, k, a):
    """d/dr ln h1(kr) - d/dr ln j(nkr) at r = a.

    Vanishes exactly where the denominator of A1/A2 does.
    """
    if not (k > 0 and a > 0):
        raise ValueError("k and a must be positive")
    out, inn = _boundary_values(n, k, a)
    return k * (out.h1_prime / out.h1 - n * inn.j_prime / inn.j)


def ss_residual_asymptotic(n, x):
    """Large-x form of the singularity condition, first order in 1/x.

    Returns ``tan(n x - pi nu/2) + i n - (n^2 - 1) A1 / (n x)``.
    """
    a1 = coeff_A(1, NU)
    return cmath.tan(n * x - 0.5 * math.pi * NU) + 1j * n - (n * n - 1.0) * a1 / (n * x)


def index_on_ss_curve(m, eta):
    """kappa on the m-th singularity curve in the (eta, kappa) plane."""
    return -eta * math.log((eta + 1.0) / (eta - 1.0)) / (math.pi * (2 * m + NU + 1.0))


def size_on_ss_curve(eta, kappa):
    """x = ka at the point (eta, kappa) of a singularity curve."""
    return -math.log((eta + 1.0) / (eta - 1.0)) / (2.0 * kappa)


# ---------------------------------------------------------------------------
# perturbative mode formulas
# ---------------------------------------------------------------------------


def mode_wavelength_pert(m, medium, res):
    if m < 1:
        raise ValueError("mode number must be positive")
    return 4.0 * medium.n0 * res.a / (2 * m + NU + 1.0)


def mode_gain_pert(m, medium, res):
    """Threshold gain of mode m with the Lorentzian line shape."""
    lam = mode_wavelength_pert(m, medium, res)
    _, f2 = dispersion_factors(medium.gamma_hat, medium.lambda0 / lam)
    return (
        4.0 * medium.n0 * medium.log_contrast
        / (medium.lambda0 * (2 * m + NU + 1.0) * f2)
    )


def gain_at_wavelength(lam, medium, res):
    """Threshold gain written through f(lambda) = ((lam^2 - lam0^2)/(lam0 lam))^2."""
    lam0 = medium.lambda0
    f = ((lam * lam - lam0 * lam0) / (lam0 * lam)) ** 2
    return medium.log_contrast / res.a * (1.0 + f / medium.gamma_hat**2)


def min_gain(medium, res):
    return medium.log_contrast / res.a


def min_radius(medium, g0_max):
    """Smallest radius admitting a singularity with gain at most g0_max."""
    if not g0_max > 0:
        raise ValueError("g0_max must be positive")
    return medium.log_contrast / g0_max


def _pert_solution(m, medium, res):
    lam = mode_wavelength_pert(m, medium, res)
    g0 = mode_gain_pert(m, medium, res)
    eta, kappa = refractive_index_linear(lam, medium.with_g0(g0))
    return ModeSolution(
        m=m,
        lambda_pert=lam,
        lambda_exact=None,
        g0=g0,
        x=2.0 * math.pi * res.a / lam,
        eta=eta,
        kappa=kappa,
    )


# ---------------------------------------------------------------------------
# exact solver
# ---------------------------------------------------------------------------


SOLVER_DPS = 32


def _index_mp(lam, kappa0, medium):
    w = medium.lambda0 / lam
    wp2 = 2 * medium.n0 * medium.gamma_hat * kappa0
    return mpmath.sqrt(medium.n0**2 - wp2 / (w * w - 1 + 1j * medium.gamma_hat * w))


def _scaled_residual_mp(lam, kappa0, medium, res):
    """ss_residual / k at the current mpmath precision."""
    n = _index_mp(lam, kappa0, medium)
    x = 2 * mpmath.pi * res.a / lam
    out = sph_bessel(NU, x, extended=True)
    inn = sph_bessel(NU, n * x, extended=True)
    return out.h1_prime / out.h1 - n * inn.j_prime / inn.j


def solve_mode_exact(m, medium, res, seed=None, max_iter=50, rtol=1e-12, fd_step=1e-7):
    """Locate the spectral singularity of mode m without approximations.

    Damped Newton iteration on (wavelength, kappa0) that zeros the complex
    singularity residual, with the index given by the full dispersion
    relation and a central finite-difference Jacobian. The iteration runs
    at ``SOLVER_DPS`` decimal digits: in double precision the phase ``n k a``
    (about 5e4 for millimetre spheres) is only known to ~1e-11, which is
    above the convergence threshold.

    Parameters
    ----------
    m : int
        Mode number.
    medium : GainMedium
        Only ``n0``, ``lambda0`` and ``gamma_hat`` are used; the gain is an
        unknown.
    res : SphericalResonator
    seed : tuple of float, optional
        Starting (wavelength, g0). Defaults to the perturbative values.
    rtol : float
        Convergence threshold on ``|residual| / k``.

    Raises
    ------
    SeedOutOfRegime
        If the seed has ``k a < 100``.
    NoConvergence
        If the iteration does not converge in ``max_iter`` steps or lands on
        a different mode.
    """
    pert = _pert_solution(m, medium, res)
    if seed is None:
        seed = (pert.lambda_pert, pert.g0)
    lam, g0 = seed
    if 2.0 * math.pi * res.a / lam < LARGE_X:
        raise SeedOutOfRegime(f"seed has ka = {2.0 * math.pi * res.a / lam:.3g} < {LARGE_X}")

    with mpmath.workdps(SOLVER_DPS):
        p = [mpmath.mpf(lam), mpmath.mpf(-g0 * medium.lambda0 / (4.0 * math.pi))]
        f = _scaled_residual_mp(p[0], p[1], medium, res)
        for _ in range(max_iter):
            if abs(f) <= rtol:
                break
            cols = []
            for i in range(2):
                h = fd_step * abs(p[i])
                up, down = list(p), list(p)
                up[i] += h
                down[i] -= h
                cols.append(
                    (_scaled_residual_mp(*up, medium, res) - _scaled_residual_mp(*down, medium, res))
                    / (2 * h)
                )
            jac = mpmath.matrix([[c.real for c in cols], [c.imag for c in cols]])
            step = mpmath.lu_solve(jac, mpmath.matrix([-f.real, -f.imag]))
            t = mpmath.mpf(1)
            while True:
                trial = [p[0] + t * step[0], p[1] + t * step[1]]
                ft = _scaled_residual_mp(trial[0], trial[1], medium, res)
                if abs(ft) < abs(f) or t < 1e-4:
                    break
                t /= 2
            p, f = trial, ft
        else:
            if not abs(f) <= rtol:
                raise NoConvergence(
                    f"mode {m}: residual {float(abs(f)):.3e} after {max_iter} iterations"
                )
        lam, kappa0 = float(p[0]), float(p[1])

    if abs(lam - pert.lambda_pert) > 0.1e-9:
        raise NoConvergence(f"mode {m}: converged to {lam * 1e9:.6f} nm, not this mode")
    med = medium.with_kappa0(kappa0)
    n = refractive_index(lam, med)
    return ModeSolution(
        m=m,
        lambda_pert=pert.lambda_pert,
        lambda_exact=lam,
        g0=med.g0,
        x=2.0 * math.pi * res.a / lam,
        eta=n.real,
        kappa=n.imag,
    )


def enumerate_modes(medium, res, g0_max, exact=False):
    """All modes whose perturbative threshold gain is at most g0_max.

    Sorted by threshold gain, lowest first.
    """
    if not g0_max > min_gain(medium, res):
        return []
    centre = max(1, round((4.0 * medium.n0 * res.a / medium.lambda0 - NU - 1.0) / 2.0))
    candidates = [m for m in (centre - 1, centre, centre + 1) if m >= 1]
    best = min(candidates, key=lambda m: mode_gain_pert(m, medium, res))

    modes = []
    for direction in (-1, 1):
        m = best if direction == -1 else best + 1
        while m >= 1 and mode_gain_pert(m, medium, res) <= g0_max:
            modes.append(m)
            m += direction
    modes.sort(key=lambda m: (mode_gain_pert(m, medium, res), m))
    if exact:
        return [solve_mode_exact(m, medium, res) for m in modes]
    return [_pert_solution(m, medium, res) for m in modes]


# ---------------------------------------------------------------------------
# reflection scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReflectionScan:
    """R(lambda) sampled at fixed gain."""

    wavelengths: np.ndarray
    R: np.ndarray
    medium: GainMedium
    resonator: SphericalResonator

    def peak_indices(self):
        """Indices of interior local maxima of R, tallest first."""
        r = self.R
        idx = np.flatnonzero((r[1:-1] > r[:-2]) & (r[1:-1] >= r[2:])) + 1
        return idx[np.argsort(-r[idx], kind="stable")]

    def peaks(self, refine=True):
        """Local maxima as (wavelength, R) pairs sorted by height.

        Resonances near threshold are far narrower than any practical grid
        step, so by default each grid maximum is refined by maximizing R
        between its two neighbouring grid points.
        """
        found = []
        for i in self.peak_indices():
            if refine:
                found.append(
                    _refine_peak(
                        self.wavelengths[i - 1], self.wavelengths[i + 1], self.medium, self.resonator
                    )
                )
            else:
                found.append((float(self.wavelengths[i]), float(self.R[i])))
        found.sort(key=lambda item: -item[1])
        return found


def _refine_peak(lo, hi, medium, res, samples=21, rtol=1e-15):
    """Maximize R on [lo, hi] by repeated zooming onto the best sample."""
    k_a = lambda lam: (refractive_index(lam, medium), 2.0 * math.pi / lam, res.a)
    best_lam, best_r = lo, -1.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PoleProximityWarning)
        while True:
            grid = np.linspace(lo, hi, samples)
            values = [reflection_coefficient(*k_a(lam)) for lam in grid]
            i = int(np.argmax(values))
            if values[i] > best_r:
                best_lam, best_r = float(grid[i]), float(values[i])
            if hi - lo <= rtol * hi:
                break
            lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, samples - 1)]
    return best_lam, best_r


def scan_reflection(medium, res, lambda_range, points):
    """Tabulate R(lambda) at fixed gain over a closed wavelength interval."""
    lo, hi = lambda_range
    if not (0 < lo < hi):
        raise ValueError("need 0 < lambda_min < lambda_max")
    if points < 2:
        raise ValueError("need at least two points")
    lams = np.linspace(lo, hi, points)
    values = np.empty(points)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PoleProximityWarning)
        for i, lam in enumerate(lams):
            n = refractive_index(lam, medium)
            values[i] = reflection_coefficient(n, 2.0 * math.pi / lam, res.a)
    return ReflectionScan(lams, values, medium, res)

"""Spherical Bessel and Hankel functions of real order and complex argument.

The order ``nu`` is a real number (not necessarily an integer) and the
spherical functions are tied to the cylinder functions through

    j_nu(z) = sqrt(pi / 2z) J_{nu+1/2}(z),   h^{(1,2)}_nu = j_nu +/- i y_nu.

Two evaluation regimes are used:

* ``Series``: the ascending power series of J_{nu+1/2} and J_{-nu-1/2},
  summed in extended precision with mpmath so that the cancellation between
  large alternating terms does not eat the double precision result.
* ``Asymptotic``: the large-argument Hankel expansions, truncated at the
  smallest term.

Derivatives always come from the three-term relation

    u'_nu = [nu u_{nu-1} - (nu+1) u_{nu+1}] / (2 nu + 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from enum import Enum

import mpmath

from .exceptions import NonConvergence, OriginError

__all__ = [
    "Z_SWITCH",
    "Regime",
    "BesselEval",
    "coeff_A",
    "sph_bessel",
    "sph_jn",
    "sph_h1",
    "sph_h2",
]

Z_SWITCH = 30.0
SERIES_MAX_TERMS = 600
ASYMP_MAX_TERMS = 400
_SERIES_RTOL = 1e-16


class Regime(str, Enum):
    SERIES = "Series"
    ASYMPTOTIC = "Asymptotic"


@dataclass(frozen=True)
class BesselEval:
    """Values of j, h1, h2 and their z-derivatives at one (nu, z)."""

    nu: float
    z: complex
    j: complex
    j_prime: complex
    h1: complex
    h1_prime: complex
    h2: complex
    h2_prime: complex
    regime: Regime

    def to_dict(self):
        out = {}
        for key, value in asdict(self).items():
            if isinstance(value, Regime):
                out[key] = value.value
            elif isinstance(value, complex):
                out[key] = {"re": value.real, "im": value.imag}
            else:
                out[key] = value
        return out


def coeff_A(k, nu):
    """Coefficient of the large-argument Hankel expansion.

    Evaluates ``Gamma(nu+k+1) / (2^k k! Gamma(nu-k+1))`` through the finite
    product ``prod_{l=0}^{2k-1} (nu + k - l) / (2^k k!)``, which stays finite
    where the Gamma ratio has poles and vanishes exactly when the expansion
    terminates.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    value = 1.0
    for ell in range(2 * k):
        value *= nu + k - ell
    return value / (2.0**k * math.factorial(k))


# --------------------------------------------------------------------------
# Series regime
# --------------------------------------------------------------------------


def _series_dps(z):
    # the largest series term is of order exp(|z|)
    return 20 + int(abs(z) / math.log(10)) + 5


def _series_sph_j(s, z):
    """j_s(z) for any real s from the ascending series (mpmath values)."""
    mu = mpmath.mpf(s) + mpmath.mpf(1) / 2
    half = z / 2
    q = -(half * half)
    term = mpmath.power(half, mu) * mpmath.rgamma(mu + 1)
    total = term
    k = 0
    peak = abs(z) / 2
    while True:
        k += 1
        if k > SERIES_MAX_TERMS:
            raise NonConvergence(
                f"ascending series for order {s} at z={complex(z)} did not converge"
            )
        term = term * q / (k * (k + mu))
        total += term
        if k > peak and abs(term) <= _SERIES_RTOL * 1e-4 * abs(total):
            break
    return mpmath.sqrt(mpmath.pi / (2 * z)) * total


def _series_sph_y(s, z):
    mu = s + 0.5
    if abs(mu - round(mu)) < 1e-12:
        # integer cylinder order: the reflection formula degenerates
        return mpmath.sqrt(mpmath.pi / (2 * z)) * mpmath.bessely(round(mu), z)
    mu_mp = mpmath.mpf(s) + mpmath.mpf(1) / 2
    j_pos = _series_sph_j(s, z)
    j_neg = _series_sph_j(-s - 1, z)
    return (j_pos * mpmath.cospi(mu_mp) - j_neg) / mpmath.sinpi(mu_mp)


def _series_triplet(s, z, extended=False):
    """(j, h1, h2) of order s by the ascending series."""
    with mpmath.workdps(max(_series_dps(z), mpmath.mp.dps + 10)):
        zm = mpmath.mpc(z)
        j = _series_sph_j(s, zm)
        y = _series_sph_y(s, zm)
        h1, h2 = j + 1j * y, j - 1j * y
    if extended:
        return +j, +h1, +h2
    return complex(j), complex(h1), complex(h2)


# --------------------------------------------------------------------------
# Asymptotic regime
# --------------------------------------------------------------------------


def _asymptotic_sums(s, z):
    """Optimally truncated sums S1 = sum i^k A_k/z^k and S2 = sum (-i)^k A_k/z^k."""
    inv = 1 / z
    term = inv / inv
    s1 = term
    s2 = term
    prev = 1.0
    phase1 = 1.0 + 0j
    phase2 = 1.0 + 0j
    for k in range(1, ASYMP_MAX_TERMS):
        term = term * ((s + k) * (s - k + 1) / (2.0 * k)) * inv
        size = abs(term)
        if size == 0.0 or size > prev:
            break
        phase1 *= 1j
        phase2 *= -1j
        s1 += phase1 * term
        s2 += phase2 * term
        if size <= _asymptotic_rtol(z) * min(abs(s1), abs(s2)):
            break
        prev = size
    return s1, s2


def _asymptotic_rtol(z):
    if isinstance(z, complex):
        return 1e-18
    return mpmath.mpf(10) ** (2 - mpmath.mp.dps)


def _asymptotic_triplet(s, z, extended=False):
    """(j, h1, h2) of order s by the Hankel expansions."""
    exp = mpmath.exp if extended else cmath.exp
    pi = mpmath.pi if extended else math.pi
    s1, s2 = _asymptotic_sums(s, z)
    # exp(iz) and exp(-i pi s/2) separately: z - pi s/2 rounds at large |z|
    rot = exp(-0.5j * pi * s)
    h1 = exp(1j * z) * rot / z * (-1j) * s1
    h2 = exp(-1j * z) / rot / z * (1j) * s2
    return 0.5 * (h1 + h2), h1, h2


# --------------------------------------------------------------------------
# Public API
# --------------------------------------------------------------------------


def _triplet(s, z, regime, extended=False):
    if regime is Regime.SERIES:
        return _series_triplet(s, z, extended)
    return _asymptotic_triplet(s, z, extended)


def _choose_regime(z, regime, z_switch):
    if regime is None:
        return Regime.SERIES if abs(z) <= z_switch else Regime.ASYMPTOTIC
    return Regime(regime)


def sph_bessel(nu, z, regime=None, z_switch=Z_SWITCH, extended=False):
    """Evaluate j, h1, h2 and their derivatives at (nu, z).

    Parameters
    ----------
    nu : float
        Real order, ``nu >= 0``.
    z : complex
        Nonzero argument.
    regime : {None, "Series", "Asymptotic"}
        Force an evaluation regime. By default the series is used for
        ``|z| <= z_switch`` and the asymptotic expansion above it.
    z_switch : float
        Regime boundary.
    extended : bool
        Evaluate at the current mpmath working precision. ``z`` is then
        taken as an mpmath number and the fields of the result are mpmath
        numbers rather than Python complex.

    Returns
    -------
    BesselEval
    """
    nu = float(nu)
    if nu < 0:
        raise ValueError("only real orders nu >= 0 are supported")
    z = mpmath.mpc(z) if extended else complex(z)
    if z == 0:
        raise OriginError("spherical Hankel functions are singular at z = 0")
    reg = _choose_regime(z, regime, z_switch)

    jm, h1m, h2m = _triplet(nu - 1.0, z, reg, extended)
    j0, h10, h20 = _triplet(nu, z, reg, extended)
    jp, h1p, h2p = _triplet(nu + 1.0, z, reg, extended)

    w = 2.0 * nu + 1.0
    return BesselEval(
        nu=nu,
        z=z,
        j=j0,
        j_prime=(nu * jm - (nu + 1.0) * jp) / w,
        h1=h10,
        h1_prime=(nu * h1m - (nu + 1.0) * h1p) / w,
        h2=h20,
        h2_prime=(nu * h2m - (nu + 1.0) * h2p) / w,
        regime=reg,
    )


def sph_jn(nu, z, regime=None):
    """Spherical Bessel function j_nu(z) without derivatives."""
    z = complex(z)
    if z == 0:
        raise OriginError("z = 0")
    return _triplet(float(nu), z, _choose_regime(z, regime, Z_SWITCH))[0]


def sph_h1(nu, z, regime=None):
    z = complex(z)
    if z == 0:
        raise OriginError("z = 0")
    return _triplet(float(nu), z, _choose_regime(z, regime, Z_SWITCH))[1]


def sph_h2(nu, z, regime=None):
    z = complex(z)
    if z == 0:
        raise OriginError("z = 0")
    return _triplet(float(nu), z, _choose_regime(z, regime, Z_SWITCH))[2]

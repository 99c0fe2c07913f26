"""Parity, time-reversal and PT invariance of point interactions.

In terms of the matching matrix:

* P-invariance:  B sigma3 B = sigma3
* T-invariance:  B is real
* PT-invariance: conj(B) sigma3 B = sigma3

PT-symmetric interactions form the family built by :func:`build_PT`,
indexed by two angles, two nonnegative magnitudes and two signs.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidParameters
from .point_core import (
    DEFAULT_TOL,
    MatchingMatrix,
    SpectralKind,
    SpectralPoint,
    classify_k,
    spectrum,
)

__all__ = [
    "SIGMA3",
    "PTParameters",
    "SymmetryReport",
    "PTClassification",
    "check_P",
    "check_P_entries",
    "check_T",
    "check_PT",
    "symmetry_report",
    "build_PT",
    "build_PT_ss_family",
    "pt_classify",
]

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)
TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-10


def _sym_tol(B, tol):
    return tol.sym * (1.0 + B.max_abs)


@dataclass(frozen=True)
class PTParameters:
    alpha: float
    delta: float
    b: float
    c: float
    eps1: int = 1
    eps2: int = 1

    def validate(self):
        if self.eps1 not in (1, -1) or self.eps2 not in (1, -1):
            raise InvalidParameters("eps1 and eps2 must be +1 or -1")
        if self.b < 0 or self.c < 0:
            raise InvalidParameters("b and c must be nonnegative")
        if self.b * self.c >= 1 and self.eps1 != 1:
            raise InvalidParameters("eps1 must be +1 when b*c >= 1")
        if 1 + self.eps1 * self.b * self.c < 0:
            raise InvalidParameters("1 + eps1*b*c must be nonnegative")
        return self


@dataclass(frozen=True)
class SymmetryReport:
    p_symmetric: bool
    t_symmetric: bool
    pt_symmetric: bool
    p_residual: float
    t_residual: float
    pt_residual: float


def check_P(B, tol=DEFAULT_TOL):
    """P-invariance via B sigma3 B = sigma3.

    The entrywise form of the same condition is evaluated too and the two
    verdicts must agree.
    """
    arr = B.to_array()
    residual = float(np.max(np.abs(arr @ SIGMA3 @ arr - SIGMA3)))
    ok = residual <= _sym_tol(B, tol)
    entry_ok, _ = check_P_entries(B, tol)
    if ok != entry_ok:
        warnings.warn(f"matrix and entrywise P-invariance tests disagree for {B}", RuntimeWarning, stacklevel=2)
    return ok, residual


def check_P_entries(B, tol=DEFAULT_TOL):
    """P-invariance via a^2 - bc = 1, d = +/-a, b(a - d) = c(a - d) = 0."""
    a, b, c, d = B.a, B.b, B.c, B.d
    residual = max(
        abs(a * a - b * c - 1),
        min(abs(d - a), abs(d + a)),
        abs(b * (a - d)),
        abs(c * (a - d)),
    )
    # the entry conditions are quadratic in B like the matrix form, but the
    # d = +/-a test is linear; scale its threshold accordingly
    return residual <= _sym_tol(B, tol) * (1.0 + B.max_abs), residual


def check_T(B, tol=DEFAULT_TOL):
    residual = max(abs(B.a.imag), abs(B.b.imag), abs(B.c.imag), abs(B.d.imag))
    return residual <= _sym_tol(B, tol), residual


def check_PT(B, tol=DEFAULT_TOL):
    arr = B.to_array()
    residual = float(np.max(np.abs(arr.conj() @ SIGMA3 @ arr - SIGMA3)))
    return residual <= _sym_tol(B, tol), residual


def symmetry_report(B, tol=DEFAULT_TOL):
    p, pr = check_P(B, tol)
    t, tr = check_T(B, tol)
    pt, ptr = check_PT(B, tol)
    return SymmetryReport(p, t, pt, pr, tr, ptr)


def build_PT(p):
    """PT-symmetric matching matrix from its parameters."""
    p.validate()
    root = math.sqrt(1.0 + p.eps1 * p.b * p.c)
    half = cmath.exp(0.5j * (p.alpha + p.delta))
    return MatchingMatrix(
        a=root * cmath.exp(1j * p.alpha),
        b=p.eps1 * p.eps2 * p.b * half,
        c=p.eps2 * p.c * half,
        d=root * cmath.exp(1j * p.delta),
    )


def build_PT_ss_family(alpha, b, c, eps=1):
    """PT-symmetric interaction with a spectral singularity at k = sqrt(c/b).

    ``B = e^{i alpha} [[sqrt(1+bc), i eps b], [i eps c, -sqrt(1+bc)]]``
    """
    if b < 0 or c < 0:
        raise InvalidParameters("b and c must be nonnegative")
    if eps not in (1, -1):
        raise InvalidParameters("eps must be +1 or -1")
    root = math.sqrt(1.0 + b * c)
    phase = cmath.exp(1j * alpha)
    return MatchingMatrix(phase * root, 1j * eps * b * phase, 1j * eps * c * phase, -phase * root)


def _angle_equal(x, y):
    diff = (x - y) % TWO_PI
    return min(diff, TWO_PI - diff) <= ANGLE_TOL


@dataclass(frozen=True)
class PTClassification:
    """Spectral content of a PT-symmetric point interaction.

    ``case`` is "I", "IIa" or "IIb". In case I, ``mu`` and ``nu`` are the
    (real) quadratic parameters and ``subcase`` names the bound-state regime
    (1: real distinct energies, 2: exceptional point, 3: complex-conjugate
    energies) when ``mu < 0``. ``energies`` lists k^2 for every bound state.
    ``ss_sign`` is the sign eps of the singular family, None off the family.
    """

    case: str
    matrix: MatchingMatrix
    points: list = field(default_factory=list)
    mu: float | None = None
    nu: float | None = None
    disc: float | None = None
    ss_k: float | None = None
    ss_sign: int | None = None
    subcase: int | None = None
    energies: list = field(default_factory=list)


def pt_classify(p, tol=DEFAULT_TOL):
    """Classify the spectrum of the PT-symmetric interaction built from p."""
    B = build_PT(p)
    half_gap = 0.5 * (p.alpha - p.delta)
    cos_half = math.cos(half_gap)

    if p.b == 0:
        trace_zero = _angle_equal(p.delta, p.alpha + math.pi)
        if trace_zero:
            points = [SpectralPoint(None, SpectralKind.ALL_REAL_K)] if p.c == 0 else []
            return PTClassification("IIb", B, points)
        k = -1j * p.eps2 * p.c / (2.0 * cos_half)
        point = classify_k(k, tol)
        energies = []
        if point.kind is SpectralKind.BOUND_STATE:
            energies = [-0.25 * p.c**2 / cos_half**2]
        return PTClassification("IIa", B, [point], energies=energies)

    mu_c = B.trace / (2 * B.b)
    nu_c = B.c / B.b
    scale = tol.sym * (1.0 + abs(mu_c) + abs(nu_c))
    if abs(mu_c.imag) > scale or abs(nu_c.imag) > scale:
        raise AssertionError(f"mu, nu not real for PT parameters {p}")
    mu, nu = mu_c.real, nu_c.real
    disc = mu * mu - nu
    points = spectrum(B, tol)

    ss_k = ss_sign = subcase = None
    on_family = p.eps1 == 1 and _angle_equal(p.delta, p.alpha + math.pi) and p.c > 0
    if on_family:
        ss_k = math.sqrt(nu)
        ell = round((p.delta - p.alpha - math.pi) / TWO_PI)
        ss_sign = (-1) ** (ell % 2) * p.eps2
    elif mu < 0:
        if abs(disc) <= tol.disc * (1.0 + mu * mu):
            subcase = 2
        elif disc > 0:
            subcase = 1
        else:
            subcase = 3
    energies = [pt.energy for pt in points if pt.kind is SpectralKind.BOUND_STATE]
    return PTClassification(
        "I", B, points, mu=mu, nu=nu, disc=disc, ss_k=ss_k, ss_sign=ss_sign,
        subcase=subcase, energies=energies,
    )

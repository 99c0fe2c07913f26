"""Complex point interaction at x = 0 and the zeros of its transfer matrix.

The interaction is fixed by a matching matrix ``B`` that links the wave
function and its derivative on both sides of the origin,
``(psi, psi')(0+) = B (psi, psi')(0-)``. With plane waves
``A e^{ikx} + B e^{-ikx}`` on either side the transfer matrix is
``M = N^{-1} B N`` where ``N = [[1, 1], [ik, -ik]]``. Spectral singularities
are real zeros of ``M22``; bound states are zeros in the upper half plane.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DegenerateWavenumber

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "MatchingMatrix",
    "TransferMatrix",
    "SpectralKind",
    "SpectralPoint",
    "AmplitudePair",
    "transfer_matrix",
    "m22",
    "quadratic_coefficients",
    "spectrum",
    "case_label",
    "classify_k",
    "propagate",
    "classify_anomalous",
]


@dataclass(frozen=True)
class Tolerances:
    """Base tolerances; each is scaled as documented on its use site.

    ``klass`` is multiplied by ``1 + |k|``, ``disc`` by ``1 + |mu|^2`` and
    ``sym`` by ``1 + max|B_ij|``. ``det`` is absolute.
    """

    klass: float = 1e-9
    det: float = 1e-9
    disc: float = 1e-9
    sym: float = 1e-10

    def as_dict(self):
        return {"class": self.klass, "det": self.det, "disc": self.disc, "sym": self.sym}


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class MatchingMatrix:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=complex)
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def delta(cls, coupling):
        """Delta-function potential with a (possibly complex) coupling."""
        return cls(1, 0, coupling, 1)

    def to_array(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def trace(self):
        return self.a + self.d

    @property
    def max_abs(self):
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def is_anomalous(self, tol=DEFAULT_TOL):
        return abs(self.det - 1) > tol.det


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex
    k: complex

    def to_array(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21


class SpectralKind(str, Enum):
    SPECTRAL_SINGULARITY = "SpectralSingularity"
    BOUND_STATE = "BoundState"
    GROWING_SOLUTION = "GrowingSolution"
    THRESHOLD_ARTIFACT = "ThresholdArtifact"
    ALL_REAL_K = "AllRealK"


@dataclass(frozen=True)
class SpectralPoint:
    """A zero of M22, or the marker for an identically vanishing M22.

    ``k`` is None for the ``AllRealK`` marker.
    """

    k: complex | None
    kind: SpectralKind
    order: int = 1

    @property
    def energy(self):
        return None if self.k is None else self.k * self.k


@dataclass(frozen=True)
class AmplitudePair:
    A: complex
    B: complex


def _check_k(k, tol):
    k = complex(k)
    if abs(k) <= tol.klass:
        raise DegenerateWavenumber("transfer matrix is undefined at k = 0")
    return k


def transfer_matrix(B, k, tol=DEFAULT_TOL):
    """Closed form of N^{-1} B N at wavenumber k."""
    k = _check_k(k, tol)
    a, b, c, d = B.a, B.b, B.c, B.d
    pre = -0.5j / k
    bk2 = b * k * k
    return TransferMatrix(
        m11=pre * (-bk2 + 1j * (a + d) * k + c),
        m12=pre * (bk2 + 1j * (a - d) * k + c),
        m21=pre * (-bk2 + 1j * (a - d) * k - c),
        m22=pre * (bk2 + 1j * (a + d) * k - c),
        k=k,
    )


def m22(B, k, tol=DEFAULT_TOL):
    k = _check_k(k, tol)
    return (-0.5j / k) * (B.b * k * k + 1j * (B.a + B.d) * k - B.c)


def quadratic_coefficients(B):
    """Coefficients (p2, p1, p0) of p2 k^2 + p1 k + p0, the numerator of M22."""
    return B.b, 1j * (B.a + B.d), -B.c


def classify_k(k, tol=DEFAULT_TOL, order=1):
    """Classify a single zero of M22."""
    k = complex(k)
    t = tol.klass * (1.0 + abs(k))
    if abs(k) <= t:
        kind = SpectralKind.THRESHOLD_ARTIFACT
    elif abs(k.imag) <= t:
        kind = SpectralKind.SPECTRAL_SINGULARITY
    elif k.imag > 0:
        kind = SpectralKind.BOUND_STATE
    else:
        kind = SpectralKind.GROWING_SOLUTION
    return SpectralPoint(k, kind, order)


def _is_zero(value, scale, tol):
    return abs(value) <= tol * (1.0 + scale)


def _scaled(B):
    """(b, a + d, c) divided by their largest modulus; the roots are unchanged."""
    b, t, c = B.b, B.trace, B.c
    s = max(abs(b), abs(t), abs(c))
    return b / s, t / s, c / s


def _double_root(B, tol):
    """|mu^2 - nu| <= tol.disc (1 + |mu|^2), multiplied through by 4|b|^2."""
    b, t, c = _scaled(B)
    disc4 = t * t - 4 * b * c
    return abs(disc4) <= tol.disc * (4 * abs(b) ** 2 + abs(t) ** 2)


def case_label(B, tol=DEFAULT_TOL):
    """One of "I", "Ia", "Ib", "Ic", "IIa", "IIb"."""
    scale = B.max_abs
    if B.b == 0:
        return "IIb" if _is_zero(B.trace, scale, tol.sym) else "IIa"
    if _double_root(B, tol):
        return "Ic"
    if _is_zero(B.trace, scale, tol.sym):
        return "Ia"
    if _is_zero(B.c, scale, tol.sym):
        return "Ib"
    return "I"


def spectrum(B, tol=DEFAULT_TOL):
    """Zeros of M22, classified.

    For ``b != 0`` the zeros are ``k = -i(mu +/- sqrt(mu^2 - nu))`` with
    ``mu = (a + d)/2b`` and ``nu = c/b``; a double zero is returned once with
    ``order = 2``. For ``b = 0`` there is at most one zero
    ``k = -i c/(a + d)``; if also ``a + d = 0`` then M22 is either never zero
    (``c != 0``) or identically zero (``c = 0``, one ``AllRealK`` marker).
    Zeros at ``k = 0`` are reported as threshold artifacts because M22 does
    not vanish there.
    """
    scale = B.max_abs
    # any nonzero b keeps the quadratic: a tiny b carries a huge genuine root
    if B.b == 0:
        if _is_zero(B.trace, scale, tol.sym):
            if _is_zero(B.c, scale, tol.sym):
                return [SpectralPoint(None, SpectralKind.ALL_REAL_K)]
            return []
        return [classify_k(-1j * B.c / B.trace, tol)]

    if _double_root(B, tol):
        return [classify_k(-1j * B.trace / (2 * B.b), tol, order=2)]
    # larger root first, the other from the product of roots; b is never
    # divided out so that tiny b cannot overflow
    b, t, c = _scaled(B)
    p2, p1, p0 = b, 1j * t, -c
    root = cmath.sqrt(p1 * p1 - 4 * p2 * p0)
    q = -0.5 * (p1 + root if abs(p1 + root) >= abs(p1 - root) else p1 - root)
    k1 = q / p2
    k2 = p0 / q
    return [classify_k(k1, tol), classify_k(k2, tol)]


def propagate(B, k, left, tol=DEFAULT_TOL):
    """Right-side amplitudes from left-side amplitudes."""
    M = transfer_matrix(B, k, tol)
    return AmplitudePair(
        A=M.m11 * left.A + M.m12 * left.B,
        B=M.m21 * left.A + M.m22 * left.B,
    )


def classify_anomalous(B, tol=DEFAULT_TOL):
    """Return (det B, anomalous)."""
    det = B.det
    return det, abs(det - 1) > tol.det

"""Coalescing bound states and spectral singularities.

Along the one-parameter family ``nu = (1 + eps/4) mu^2`` with ``Re(mu) <= 0``
and ``eps in [-1, 1]`` the two zeros of M22 are

    k_pm = -i (1 +/- sqrt(-eps)/2) mu,

which merge into the double zero ``-i mu`` at ``eps = 0``.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .point_core import DEFAULT_TOL, MatchingMatrix, SpectralPoint, classify_k

__all__ = [
    "CoalescenceEvent",
    "CoalescenceRow",
    "CoalescenceScan",
    "CSV_COLUMNS",
    "k_pair",
    "k_pair_piecewise",
    "critical_epsilons",
    "embed",
    "sweep",
]

CSV_COLUMNS = ("eps", "re_k_plus", "im_k_plus", "kind_plus", "re_k_minus", "im_k_minus", "kind_minus")


class CoalescenceEvent(str, Enum):
    COALESCENCE = "Coalescence"
    BOUND_STATE_BECOMES_SS = "BoundStateBecomesSS"


def _check(mu, eps=None):
    mu = complex(mu)
    if mu.real > 0:
        raise DomainError("Re(mu) must be <= 0")
    if eps is not None and not -1.0 <= eps <= 1.0:
        raise DomainError("eps must lie in [-1, 1]")
    return mu


def k_pair(mu, eps):
    """Both zeros (k_plus, k_minus) of M22 on the family."""
    mu = _check(mu, eps)
    root = cmath.sqrt(complex(-eps))
    if eps > 0:
        # principal branch on the cut: +i sqrt(eps)
        root = 1j * math.sqrt(eps)
    return -1j * (1 + root / 2) * mu, -1j * (1 - root / 2) * mu


def k_pair_piecewise(mu, eps):
    """Same zeros from the separate real and imaginary part formulas."""
    mu = _check(mu, eps)
    mr, mi = mu.real, mu.imag
    s = math.sqrt(abs(eps)) / 2
    if eps < 0:
        plus = complex((1 + s) * mi, -(1 + s) * mr)
        minus = complex((1 - s) * mi, -(1 - s) * mr)
    elif eps == 0:
        plus = minus = complex(mi, -mr)
    else:
        plus = complex(mi + s * mr, -mr + s * mi)
        minus = complex(mi - s * mr, -mr - s * mi)
    return plus, minus


def critical_epsilons(mu):
    """Values of eps where the spectrum changes character."""
    mu = _check(mu)
    events = [(0.0, CoalescenceEvent.COALESCENCE)]
    if mu.real < 0 and mu.imag != 0:
        eps_c = 4 * mu.real**2 / mu.imag**2
        if eps_c <= 1:
            events.append((eps_c, CoalescenceEvent.BOUND_STATE_BECOMES_SS))
    return events


def embed(mu, nu):
    """Matching matrix with b = 1, a = d = mu, c = nu."""
    return MatchingMatrix(mu, 1, nu, mu)


@dataclass(frozen=True)
class CoalescenceRow:
    eps: float
    plus: SpectralPoint
    minus: SpectralPoint


@dataclass(frozen=True)
class CoalescenceScan:
    mu: complex
    rows: tuple

    @property
    def epsilons(self):
        return np.array([row.eps for row in self.rows])

    def to_csv(self, digits=12):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        fmt = f"{{:.{digits}g}}"
        for row in self.rows:
            writer.writerow([
                fmt.format(row.eps),
                fmt.format(row.plus.k.real), fmt.format(row.plus.k.imag), row.plus.kind.value,
                fmt.format(row.minus.k.real), fmt.format(row.minus.k.imag), row.minus.kind.value,
            ])
        return buf.getvalue()


def sweep(mu, grid, tol=DEFAULT_TOL):
    """Tabulate both branches over an increasing grid of eps values."""
    mu = _check(mu)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise DomainError("eps grid must be one-dimensional and strictly increasing")
    rows = []
    for eps in grid:
        plus, minus = k_pair(mu, float(eps))
        rows.append(CoalescenceRow(float(eps), classify_k(plus, tol), classify_k(minus, tol)))
    return CoalescenceScan(mu, tuple(rows))

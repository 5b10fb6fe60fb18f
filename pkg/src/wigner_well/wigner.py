"""Closed-form Wigner distributions of infinite-square-well eigenstates.

Both functions integrate over the symmetric window ``|y| <= Y(x)`` with
``Y = x`` on the left half of the well and ``Y = L - x`` on the right half.
Every ``sin(a*Y)/a`` quotient goes through :func:`~wigner_well.core.sin_over`,
so the ``a -> 0`` ridges (p = +-p_n, p = 0) evaluate to their linear limit.
"""
from __future__ import annotations

import math

import numpy as np

from .core import STATIONARY, PhaseSpaceGrid, WellConfig, WignerField, evaluate_rows, sin_over
from .eigenbasis import _check_index


def half_width(well: WellConfig, x):
    """Y(x) = min(x, L - x) inside the well, 0 outside; x = L/2 takes the left branch."""
    L = well.length
    x = np.asarray(x, dtype=float)
    y = np.where(x <= 0.5 * L, x, L - x)
    return np.where((x >= 0.0) & (x <= L), y, 0.0)


def wigner_eigen(well: WellConfig, n, x, p):
    """Wigner distribution of the n-th eigenstate at (x, p); broadcasts over arrays."""
    n = _check_index(n)
    L, hbar = well.length, well.hbar
    x = np.asarray(x, dtype=float)
    y = half_width(well, x)
    k = np.asarray(p, dtype=float) / hbar
    kn = n * math.pi / L
    # the cosine is symmetric under x -> L - x, so using Y there changes nothing analytically
    out = (2.0 / (math.pi * hbar * L)) * (
        0.5 * sin_over(2.0 * (k - kn), y)
        + 0.5 * sin_over(2.0 * (k + kn), y)
        - np.cos(2.0 * kn * y) * sin_over(2.0 * k, y)
    )
    return out if out.ndim else float(out)


def wigner_cross(well: WellConfig, m, n, x, p):
    """Off-diagonal term P_W^(m,n)(x, p), complex in general.

    On the right half only the y-integration factors (the sines) see
    ``x -> L - x``; the exponential phases keep the true ``x``.
    """
    m, n = _check_index(m), _check_index(n)
    L, hbar = well.length, well.hbar
    x = np.asarray(x, dtype=float)
    y = half_width(well, x)
    k2 = 2.0 * np.asarray(p, dtype=float) / hbar
    theta = math.pi * x / L
    s = (m + n) * math.pi / L
    d = (m - n) * math.pi / L
    out = (1.0 / (math.pi * hbar * L)) * (
        np.exp(1j * (m - n) * theta) * sin_over(k2 + s, y)
        + np.exp(-1j * (m - n) * theta) * sin_over(k2 - s, y)
        - np.exp(1j * (m + n) * theta) * sin_over(k2 + d, y)
        - np.exp(-1j * (m + n) * theta) * sin_over(k2 - d, y)
    )
    return out if out.ndim else complex(out)


def wigner_field_eigen(well: WellConfig, n, grid: PhaseSpaceGrid, threads=None):
    """Evaluate :func:`wigner_eigen` on every grid node."""
    n = _check_index(n)
    values = evaluate_rows(grid, lambda x, p: wigner_eigen(well, n, x, p), threads)
    return WignerField(grid, values, STATIONARY)

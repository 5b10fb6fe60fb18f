"""Energy eigenstates of the infinite square well in position and momentum space."""
from __future__ import annotations

import math

import numpy as np

from .core import WellConfig, sinc_half, support
from .quadrature import simpson_checked


def _check_index(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"eigen-index must be an integer >= 1, got {n!r}")
    return int(n)


def energy(well: WellConfig, n):
    """E_n = (hbar*pi*n)^2 / (2 m L^2)."""
    n = _check_index(n)
    return (well.hbar * math.pi * n) ** 2 / (2.0 * well.mass * well.length**2)


def u(well: WellConfig, n, x):
    """Real position-space eigenfunction sqrt(2/L) sin(n pi x/L), zero outside the well."""
    n = _check_index(n)
    L = well.length
    x = np.asarray(x, dtype=float)
    out = math.sqrt(2.0 / L) * np.sin(n * math.pi * x / L) * support(x, 0.0, L)
    return out if out.ndim else float(out)


def phi(well: WellConfig, n, p):
    """Momentum-space eigenfunction, with the overall ``-i exp(-i p L / 2 hbar)`` phase kept."""
    n = _check_index(n)
    L, hbar = well.length, well.hbar
    p = np.asarray(p, dtype=float)
    s = p * L / hbar
    bracket = np.exp(0.5j * n * math.pi) * sinc_half(s - n * math.pi) - np.exp(
        -0.5j * n * math.pi
    ) * sinc_half(s + n * math.pi)
    out = -1j * math.sqrt(L / (math.pi * hbar)) * np.exp(-0.5j * s) * bracket
    return out if out.ndim else complex(out)


def momentum_density(well: WellConfig, n, p):
    """|phi_n(p)|^2 from its three-term closed form (even in p)."""
    n = _check_index(n)
    L, hbar = well.length, well.hbar
    s = np.asarray(p, dtype=float) * L / hbar
    minus = sinc_half(s - n * math.pi)
    plus = sinc_half(s + n * math.pi)
    sign = 1.0 if n % 2 == 0 else -1.0  # cos(n pi)
    out = (L / (hbar * math.pi)) * (minus**2 + plus**2 - 2.0 * sign * minus * plus)
    return out if np.ndim(out) else float(out)


def overlap_x(well: WellConfig, m, n, tol=1e-9):
    """<u_m|u_n> by composite Simpson over [0, L]; close to the Kronecker delta."""
    m, n = _check_index(m), _check_index(n)
    panels = 4 * max(m, n) * 32
    return simpson_checked(
        lambda x: u(well, m, x) * u(well, n, x), 0.0, well.length, panels, tol
    )


def overlap_p(well: WellConfig, m, n, cutoff=None, step=None):
    """<phi_m|phi_n> integrated numerically over |p| <= cutoff.

    The integrand falls off only as 1/p^2, so the default cutoff of
    ``60*pi*hbar/L`` limits the accuracy to roughly 1e-6 for m, n <= 10.
    """
    m, n = _check_index(m), _check_index(n)
    scale = math.pi * well.hbar / well.length
    if cutoff is None:
        cutoff = 60.0 * scale
    if step is None:
        step = 0.01 * scale
    panels = 4 * math.ceil(cutoff / step / 2)
    return simpson_checked(
        lambda p: np.conj(phi(well, m, p)) * phi(well, n, p), -cutoff, cutoff, panels, 1e-6
    )

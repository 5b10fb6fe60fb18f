"""Brute-force evaluation of the defining Wigner integrals and related identities.

Nothing here uses a closed-form Wigner expression: the functions only sample
wavefunctions and integrate, so they can arbitrate every analytic result in
:mod:`wigner_well.wigner`, :mod:`wigner_well.packet` and
:mod:`wigner_well.reference`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ShapeError, WignerField
from .quadrature import integrate_samples, simpson_checked, simpson_nodes


class SlowTailWarning(UserWarning):
    """The momentum-space sampler has not decayed at the integration cutoff."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for one defining-integral evaluation.

    ``halfwidth`` bounds the integration variable (y or q). For position-space
    states living on ``support`` it may be left as ``None`` and the exact
    window ``min(x - a, b - x)`` is used.
    """

    panels: int = 4096
    halfwidth: Optional[float] = None
    support: Optional[tuple] = None
    hbar: float = 1.0
    tol: float = 1e-8
    scheme: str = "composite-simpson"

    def __post_init__(self):
        if self.panels < 8 or self.panels % 2:
            raise ValueError(f"panels must be even and >= 8, got {self.panels}")
        if self.halfwidth is not None and not self.halfwidth > 0:
            raise ValueError(f"halfwidth must be positive, got {self.halfwidth}")
        if self.halfwidth is None and self.support is None:
            raise ValueError("either halfwidth or support is required")
        if self.scheme != "composite-simpson":
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")


def _pair(state):
    if callable(state):
        return state, state
    left, right = state
    return left, right


def _panels(spec):
    # the halving check needs a multiple of 4
    return spec.panels + (-spec.panels) % 4


def wigner_quadrature_x(state, x, p, spec: QuadratureSpec):
    """(1/(pi hbar)) * integral of conj(f(x+y)) g(x-y) exp(2ipy/hbar) dy.

    ``state`` is a sampler ``f`` or a pair ``(f, g)`` for a cross term. With
    ``spec.support = (a, b)`` the window is clipped to ``|y| <= min(x-a, b-x)``,
    which is exact for states that vanish outside [a, b].
    """
    f, g = _pair(state)
    x, p = float(x), float(p)
    window = spec.halfwidth
    if spec.support is not None:
        a, b = spec.support
        edge = max(0.0, min(x - a, b - x))
        window = edge if window is None else min(window, edge)
    if window <= 0.0:
        return 0j
    hbar = spec.hbar

    def integrand(y):
        return np.conj(f(x + y)) * g(x - y) * np.exp(2j * p * y / hbar)

    value = simpson_checked(integrand, -window, window, _panels(spec), spec.tol)
    return complex(value) / (math.pi * hbar)


def wigner_quadrature_p(state, x, p, spec: QuadratureSpec):
    """(1/(pi hbar)) * integral of conj(f(p+q)) g(p-q) exp(-2iqx/hbar) dq over |q| <= halfwidth."""
    if spec.halfwidth is None:
        raise ValueError("momentum-space quadrature needs an explicit halfwidth")
    f, g = _pair(state)
    x, p = float(x), float(p)
    cutoff = spec.halfwidth
    hbar = spec.hbar

    probe = simpson_nodes(p - cutoff, p + cutoff, _panels(spec))
    density = np.abs(f(probe)) ** 2
    peak = density.max()
    if peak > 0 and max(density[0], density[-1]) > 1e-10 * peak:
        warnings.warn(
            f"|phi|^2 at the cutoff is {max(density[0], density[-1]) / peak:.1e} of its peak",
            SlowTailWarning,
            stacklevel=2,
        )

    def integrand(q):
        return np.conj(f(p + q)) * g(p - q) * np.exp(-2j * q * x / hbar)

    value = simpson_checked(integrand, -cutoff, cutoff, _panels(spec), spec.tol)
    return complex(value) / (math.pi * hbar)


def marginal_x(field: WignerField):
    """Position density: integrate the field over p at every x node."""
    return integrate_samples(field.values, field.grid.p, axis=1)


def marginal_p(field: WignerField):
    """Momentum density: integrate the field over x at every p node."""
    return integrate_samples(field.values, field.grid.x, axis=0)


def overlap_functional(field_a: WignerField, field_b: WignerField):
    """Double integral of the pointwise product of two fields on the same grid."""
    if field_a.grid != field_b.grid:
        raise ShapeError("overlap needs both fields on the identical grid")
    grid = field_a.grid
    inner = integrate_samples(field_a.values * field_b.values, grid.p, axis=1)
    return float(integrate_samples(inner, grid.x))


def _averaged_symmetric_integral(integrand, frequencies, cutoff, step):
    """Integral of an even integrand over [-Z, Z], averaged over Z in one slow period.

    Plain truncation leaves an O(1/Z) oscillating remainder; averaging the
    partial integral across a full period of the slowest oscillation removes
    its leading term.
    """
    nonzero = [abs(w) for w in frequencies if abs(w) > 1e-12]
    period = 2.0 * math.pi / min(nonzero) if nonzero else 2.0 * math.pi
    upper = cutoff + period
    count = 2 * math.ceil(upper / step / 2)
    z = np.linspace(0.0, upper, count + 1)
    values = integrand(z)
    h = z[1] - z[0]
    # cumulative Simpson on even node indices: partial[j] = integral over [0, z[2j]]
    pairs = (values[:-2:2] + 4.0 * values[1:-1:2] + values[2::2]) * (h / 3.0)
    partial = np.concatenate([[0.0], np.cumsum(pairs)])
    z_even = z[::2]
    window = z_even >= cutoff
    zs, ps = z_even[window], partial[window]
    if len(zs) % 2 == 0:
        zs, ps = zs[:-1], ps[:-1]
    mean = integrate_samples(ps, zs) / (zs[-1] - zs[0])
    return 2.0 * mean


def sinc_cos_integral(m, cutoff=1e4, step=0.02):
    """Integral of sin(z) cos(m z)/z over the real line, computed numerically.

    Exact values are pi for |m| < 1, pi/2 for |m| = 1 and 0 for |m| > 1.
    """
    m = float(m)

    def integrand(z):
        return np.sinc(z / math.pi) * np.cos(m * z)

    return _averaged_symmetric_integral(integrand, (1.0 + m, 1.0 - m), cutoff, step)


def sinc_squared_integral(cutoff=1e4, step=0.02):
    """Integral of sin(z)^2/z^2 over the real line (exactly pi)."""
    return _averaged_symmetric_integral(lambda z: np.sinc(z / math.pi) ** 2, (2.0,), cutoff, step)

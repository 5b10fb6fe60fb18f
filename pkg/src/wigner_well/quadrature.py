"""Composite Simpson quadrature with a single halving check."""
from __future__ import annotations

import numpy as np
from scipy.integrate import simpson

from .core import ConvergenceError


def simpson_nodes(a, b, panels):
    if panels < 2 or panels % 2:
        raise ValueError(f"Simpson needs an even panel count >= 2, got {panels}")
    nodes = a + np.arange(panels + 1) * ((b - a) / panels)
    nodes[-1] = b
    return nodes


def simpson_checked(f, a, b, panels, tol):
    """Integrate ``f`` over [a, b] and certify the result by halving.

    ``f`` is called once on all ``panels + 1`` nodes. The estimate on every
    second node is compared with the full one; a gap wider than ``tol`` raises
    :class:`ConvergenceError`. The returned value carries the Richardson
    correction ``(fine - coarse) / 15``.
    """
    if panels < 8 or panels % 4:
        raise ValueError(f"panels must be a multiple of 4 and >= 8, got {panels}")
    if a == b:
        return 0.0 * f(np.array([a]))[0]
    nodes = simpson_nodes(a, b, panels)
    values = f(nodes)
    h = (b - a) / panels
    fine = simpson(values, dx=h)
    coarse = simpson(values[::2], dx=2.0 * h)
    gap = abs(fine - coarse)
    if not gap <= tol:
        raise ConvergenceError(
            f"Simpson halving disagreement {gap:.3e} exceeds {tol:.1e} "
            f"on [{a}, {b}] with {panels} panels"
        )
    return fine + (fine - coarse) / 15.0


def integrate_samples(values, nodes, axis=-1):
    """Simpson integration of sampled values along one axis."""
    return simpson(values, x=nodes, axis=axis)

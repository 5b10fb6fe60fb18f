"""Physical configuration, phase-space grids and field containers.

Every quantity is carried in the caller's unit system; nothing is rescaled
internally. Complex amplitudes are plain Python/NumPy complex numbers.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

STATIONARY = "stationary"


class WellError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(WellError, ValueError):
    pass


class GridError(WellError, ValueError):
    pass


class ShapeError(WellError, ValueError):
    pass


class DomainError(WellError, ValueError):
    pass


class ConvergenceError(WellError, ArithmeticError):
    """A quadrature failed its halving check."""


class PacketPlacementError(WellError, ValueError):
    """The Gaussian packet sits too close to a wall for the coefficient formula."""


class TruncationError(WellError, ArithmeticError):
    """Too much probability lies beyond the requested maximum index."""


def _check_positive(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value) or value <= 0.0:
        raise ConfigurationError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class WellConfig:
    """Mass, width and reduced Planck constant of an infinite square well on [0, length]."""

    mass: float
    length: float
    hbar: float

    def __post_init__(self):
        for name in ("mass", "length", "hbar"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))

    def momentum(self, n):
        """Quantized momentum n*pi*hbar/L (vectorized over ``n``)."""
        return n * math.pi * self.hbar / self.length

    @property
    def revival_time(self):
        return 4.0 * self.mass * self.length**2 / (self.hbar * math.pi)


def make_well_config(mass, length, hbar):
    return WellConfig(mass, length, hbar)


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular closed-interval sampling of the (x, p) plane.

    Node ``i`` along x sits at ``x_min + i*(x_max - x_min)/(nx - 1)``; the
    first and last nodes are exactly the bounds.
    """

    x_min: float
    x_max: float
    nx: int
    p_min: float
    p_max: float
    np: int

    def __post_init__(self):
        for name in ("x_min", "x_max", "p_min", "p_max"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise GridError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("nx", "np"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 2:
                raise GridError(f"{name} must be an integer >= 2, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not self.x_min < self.x_max:
            raise GridError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if not self.p_min < self.p_max:
            raise GridError(f"need p_min < p_max, got [{self.p_min}, {self.p_max}]")

    @staticmethod
    def _nodes(lo, hi, count):
        nodes = lo + np.arange(count) * ((hi - lo) / (count - 1))
        nodes[-1] = hi
        nodes.flags.writeable = False
        return nodes

    @cached_property
    def x(self):
        return self._nodes(self.x_min, self.x_max, self.nx)

    @cached_property
    def p(self):
        return self._nodes(self.p_min, self.p_max, self.np)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dp(self):
        return (self.p_max - self.p_min) / (self.np - 1)

    @property
    def shape(self):
        return (self.nx, self.np)


def make_grid(x_min, x_max, nx, p_min, p_max, np):  # noqa: A002 - mirrors the field name
    return PhaseSpaceGrid(x_min, x_max, nx, p_min, p_max, np)


@dataclass(frozen=True, eq=False)
class WignerField:
    """Real Wigner values on a grid; ``values[i, j]`` belongs to ``(grid.x[i], grid.p[j])``."""

    grid: PhaseSpaceGrid
    values: np.ndarray
    timestamp: Union[float, str] = STATIONARY

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ShapeError(f"values have shape {values.shape}, grid needs {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Wigner field contains non-finite values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def stationary(self):
        return self.timestamp == STATIONARY


@dataclass(frozen=True)
class TimeScales:
    t_classical: float
    t_revival: float
    t_spreading: float

    def __post_init__(self):
        for name in ("t_classical", "t_revival", "t_spreading"):
            _check_positive(name, getattr(self, name))


def sinc_half(z):
    """sin(z/2)/z, finite at z = 0.

    A Taylor branch is used for |z| < 1e-4, where the truncation error of the
    three retained terms is below 1e-17.
    """
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-4
    safe = np.where(small, 1.0, z)
    z2 = z * z
    out = np.where(small, 0.5 - z2 / 48.0 + z2 * z2 / 3840.0, np.sin(0.5 * safe) / safe)
    return out if out.ndim else float(out)


def sin_over(a, chi):
    """sin(a*chi)/a with the limit chi at a = 0."""
    chi = np.asarray(chi, dtype=float)
    return 2.0 * chi * sinc_half(2.0 * np.asarray(a, dtype=float) * chi)


def support(x, a, b):
    """Indicator of [a, b] that takes the value 1/2 exactly at the endpoints."""
    x = np.asarray(x, dtype=float)
    out = np.where((x > a) & (x < b), 1.0, 0.0)
    out = np.where((x == a) | (x == b), 0.5, out)
    return out if out.ndim else float(out)


THREADS_ENV = "WIGNER_WELL_THREADS"


def resolve_threads(threads=None):
    """Worker count: explicit argument, else ``$WIGNER_WELL_THREADS``, else the CPU count."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV)
        if raw is None or raw.strip() == "":
            return os.cpu_count() or 1
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if threads < 1:
        raise ConfigurationError(f"thread count must be >= 1, got {threads}")
    return threads


def evaluate_rows(grid: PhaseSpaceGrid, row, threads=None):
    """Build an (nx, np) array by calling ``row(x_i, p_nodes)`` for every x node.

    Each row is computed by the same vectorized call regardless of how many
    workers run, so the result is bitwise independent of ``threads``.
    """
    threads = resolve_threads(threads)
    p = grid.p
    if threads == 1:
        rows = [row(x, p) for x in grid.x]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda x: row(x, p), grid.x))
    return np.stack([np.broadcast_to(np.asarray(r, dtype=float), p.shape) for r in rows])

"""Benchmark Wigner functions and classical densities.

Free and two-Gaussian packets, harmonic-oscillator eigenstates, and the
classical position/momentum distributions of the square well and oscillator.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError
from .quadrature import simpson_nodes, integrate_samples


@dataclass(frozen=True)
class FreeGaussianSpec:
    """Free Gaussian packet centred at (x0, p0); position width is ``beta = hbar*alpha``."""

    x0: float
    p0: float
    alpha: float
    mass: float
    hbar: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0 or not self.mass > 0 or not self.hbar > 0:
            raise ValueError("alpha, mass and hbar must be positive")

    @property
    def beta(self):
        return self.hbar * self.alpha

    @property
    def spreading_time(self):
        return self.mass * self.hbar * self.alpha**2


def free_gaussian_wigner(spec: FreeGaussianSpec, x, p, t=0.0):
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    out = (
        np.exp(-(spec.alpha**2) * (p - spec.p0) ** 2)
        * np.exp(-((x - spec.x0 - p * t / spec.mass) ** 2) / spec.beta**2)
        / (math.pi * spec.hbar)
    )
    return out if out.ndim else float(out)


def free_gaussian_phi(spec: FreeGaussianSpec, p, t=0.0):
    """Momentum-space amplitude of the free Gaussian at time ``t``."""
    p = np.asarray(p, dtype=float)
    hbar = spec.hbar
    return (
        math.sqrt(spec.alpha / math.sqrt(math.pi))
        * np.exp(-(spec.alpha**2) * (p - spec.p0) ** 2 / 2.0)
        * np.exp(-1j * p * spec.x0 / hbar)
        * np.exp(-1j * p**2 * t / (2.0 * spec.mass * hbar))
    )


def free_gaussian_psi(spec: FreeGaussianSpec, x, t=0.0):
    """Position-space amplitude of the free Gaussian at time ``t``."""
    x = np.asarray(x, dtype=float)
    hbar, beta = spec.hbar, spec.beta
    spread = 1.0 + 1j * t / spec.spreading_time
    centre = spec.x0 + spec.p0 * t / spec.mass
    return (
        np.exp(1j * spec.p0 * (x - spec.x0) / hbar)
        * np.exp(-1j * spec.p0**2 * t / (2.0 * spec.mass * hbar))
        * np.exp(-((x - centre) ** 2) / (2.0 * beta**2 * spread))
        / np.sqrt(math.sqrt(math.pi) * beta * spread)
    )


@dataclass(frozen=True)
class TwoGaussianSpec:
    """gamma * G(x_a, p_a) + delta * G(x_b, p_b) with a common width ``beta``."""

    x_a: float
    p_a: float
    x_b: float
    p_b: float
    gamma: complex
    delta: complex
    beta: float
    hbar: float = 1.0

    @classmethod
    def normalized(cls, x_a, p_a, x_b, p_b, gamma, delta, beta, hbar=1.0):
        """Rescale (gamma, delta) so the superposed state has unit norm.

        The norm includes the overlap of the two Gaussians, so for well
        separated lumps this reduces to ``|gamma|^2 + |delta|^2 = 1``.
        """
        raw = cls(x_a, p_a, x_b, p_b, complex(gamma), complex(delta), beta, hbar)
        norm = (
            abs(raw.gamma) ** 2
            + abs(raw.delta) ** 2
            + 2.0 * (raw.gamma.conjugate() * raw.delta * raw.overlap()).real
        )
        scale = 1.0 / math.sqrt(norm)
        return cls(x_a, p_a, x_b, p_b, raw.gamma * scale, raw.delta * scale, beta, hbar)

    def overlap(self):
        """<G_a|G_b> for the two unit-normalized component Gaussians."""
        beta, hbar = self.beta, self.hbar
        dx, dp = self.x_a - self.x_b, self.p_a - self.p_b
        phase = ((self.p_a + self.p_b) * dx / 2.0) / hbar
        return cmath.exp(1j * phase) * math.exp(
            -(dx**2) / (4 * beta**2) - beta**2 * dp**2 / (4 * hbar**2)
        )

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        return self.gamma * _gaussian(x, self.x_a, self.p_a, self.beta, self.hbar) + (
            self.delta * _gaussian(x, self.x_b, self.p_b, self.beta, self.hbar)
        )


def _gaussian(x, x0, p0, beta, hbar):
    return (
        np.exp(-((x - x0) ** 2) / (2 * beta**2))
        * np.exp(1j * p0 * (x - x0) / hbar)
        / math.sqrt(beta * math.sqrt(math.pi))
    )


def two_gaussian_wigner(spec: TwoGaussianSpec, x, p):
    """Wigner function of a two-Gaussian superposition: two lumps plus an interference term.

    The interference term sits at the phase-space midpoint and carries the
    constant phase ``(p_b x_b - p_a x_a)/hbar``, which is what the defining
    integral produces for components written as ``exp(i p_j (x - x_j)/hbar)``.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    hbar, beta = spec.hbar, spec.beta
    alpha = beta / hbar
    x_mid = 0.5 * (spec.x_a + spec.x_b)
    p_mid = 0.5 * (spec.p_a + spec.p_b)

    def lump(xc, pc):
        return np.exp(-(alpha**2) * (p - pc) ** 2) * np.exp(-((x - xc) ** 2) / beta**2)

    phase = (
        (spec.p_b * spec.x_b - spec.p_a * spec.x_a)
        - (spec.x_a - spec.x_b) * (p - p_mid)
        + (spec.p_a - spec.p_b) * x
    ) / hbar
    cross = 2.0 * lump(x_mid, p_mid) * np.real(
        spec.gamma * np.conj(spec.delta) * np.exp(1j * phase)
    )
    out = (
        abs(spec.gamma) ** 2 * lump(spec.x_a, spec.p_a)
        + abs(spec.delta) ** 2 * lump(spec.x_b, spec.p_b)
        + cross
    ) / (math.pi * hbar)
    return out if out.ndim else float(out)


def laguerre(n, z):
    """L_n(z) by the three-term recurrence (k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1}."""
    if n < 0:
        raise ValueError(f"Laguerre degree must be >= 0, got {n}")
    z = np.asarray(z, dtype=float)
    prev, cur = np.ones_like(z), 1.0 - z
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - z) * cur - k * prev) / (k + 1)
    return cur


def sho_wigner(n, x, p, b, hbar=1.0):
    """Oscillator eigenstate Wigner function ((-1)^n/(pi hbar)) exp(-rho^2) L_n(2 rho^2).

    ``b = sqrt(hbar/(m omega))`` is the oscillator length and
    ``rho^2 = x^2/b^2 + b^2 p^2/hbar^2``. Degrees up to 50 are supported.
    """
    if n < 0 or n > 50:
        raise ValueError(f"oscillator level must be in [0, 50], got {n}")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    rho2 = x**2 / b**2 + b**2 * p**2 / hbar**2
    out = (-1.0) ** n / (math.pi * hbar) * np.exp(-rho2) * laguerre(n, 2.0 * rho2)
    return out if out.ndim else float(out)


def sho_eigenfunction(n, x, b):
    """Normalized oscillator eigenfunction via the stable Hermite-function recurrence."""
    z = np.asarray(x, dtype=float) / b
    prev = np.zeros_like(z)
    cur = np.exp(-(z**2) / 2.0) / math.pi**0.25
    for k in range(n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * z * cur - math.sqrt(k / (k + 1)) * prev
    return cur / math.sqrt(b)


CLASSICAL_KINDS = ("uniform-x", "dirac-pair-p", "sho-x", "sho-p")


@dataclass(frozen=True)
class ClassicalDensity:
    """A normalized classical density.

    ``scale`` is the well width L for ``uniform-x``, the momentum p0 for
    ``dirac-pair-p`` and the turning point x_A (or p_A) for the oscillator kinds.
    """

    kind: str
    scale: float

    def __post_init__(self):
        if self.kind not in CLASSICAL_KINDS:
            raise ValueError(f"unknown classical density {self.kind!r}")
        if self.kind != "dirac-pair-p" and not self.scale > 0:
            raise ValueError("scale must be positive")

    def atoms(self):
        if self.kind != "dirac-pair-p":
            raise TypeError(f"{self.kind} is a continuous density")
        p0 = abs(self.scale)
        return [(-p0, 0.5), (p0, 0.5)]

    def __call__(self, point):
        if self.kind == "dirac-pair-p":
            raise TypeError("the momentum distribution of the well is a pair of Dirac atoms")
        point = np.asarray(point, dtype=float)
        if self.kind == "uniform-x":
            out = np.where((point > 0) & (point < self.scale), 1.0 / self.scale, 0.0)
            return out if out.ndim else float(out)
        amp = self.scale
        if np.any(np.abs(point) >= amp):
            raise DomainError(f"point lies outside the classical region |{self.kind[-1]}| < {amp}")
        out = 1.0 / (math.pi * np.sqrt((amp - point) * (amp + point)))
        return out if out.ndim else float(out)

    def integrate(self, lo=None, hi=None, panels=256):
        """Probability in [lo, hi]; oscillator kinds substitute x = x_A sin(theta)."""
        if self.kind == "dirac-pair-p":
            lo = -math.inf if lo is None else lo
            hi = math.inf if hi is None else hi
            return sum(w for loc, w in self.atoms() if lo <= loc <= hi)
        if self.kind == "uniform-x":
            lo = 0.0 if lo is None else max(lo, 0.0)
            hi = self.scale if hi is None else min(hi, self.scale)
            return max(hi - lo, 0.0) / self.scale
        amp = self.scale
        lo = -amp if lo is None else max(lo, -amp)
        hi = amp if hi is None else min(hi, amp)
        theta = simpson_nodes(math.asin(lo / amp), math.asin(hi / amp), panels)
        cos = np.cos(theta)
        # density(x_A sin t) * x_A cos t, with the 1/pi limit where cos t -> 0
        weight = np.full_like(theta, 1.0 / math.pi)
        inner = np.abs(cos) > 1e-12
        s = np.sin(theta[inner])
        weight[inner] = amp * cos[inner] / (
            math.pi * amp * np.sqrt((1.0 - s) * (1.0 + s))
        )
        return float(integrate_samples(weight, theta))


def classical_density(kind, scale, point=None):
    """Pointwise classical density, or the atom list for ``dirac-pair-p``."""
    density = ClassicalDensity(kind, scale)
    if kind == "dirac-pair-p":
        return density.atoms()
    return density(point)

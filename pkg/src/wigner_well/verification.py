"""Self-checks run by ``wigner-well verify``.

Each suite returns a list of :class:`Check` records holding the measured
residual and the tolerance it must stay below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import eigenbasis, oracle, packet, wigner
from .core import WellConfig, make_grid
from .quadrature import integrate_samples

REFERENCE_WELL = WellConfig(mass=0.5, length=1.0, hbar=1.0)
REFERENCE_PACKET = packet.GaussianPacketSpec(x0=0.5, p0=40 * math.pi, b=math.sqrt(2) / 20)

# p-window for eigenstate marginals, in units of p_n; the 1/p^2 tails need it this wide
MARGINAL_P_WINDOW = 200
MARGINAL_P_NODES = 40001
MARGINAL_X_NODES = 2001
PHI_CUTOFF = 400 * math.pi


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.measured <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual={self.measured:.3e} tol={self.tolerance:.1e}"


def eigen_marginal_errors(well, n, p_window=MARGINAL_P_WINDOW, p_nodes=MARGINAL_P_NODES,
                          x_nodes=MARGINAL_X_NODES):
    """Worst pointwise gaps of the p- and x-marginals of P_W^(n) against |u_n|^2 and |phi_n|^2."""
    L = well.length
    p_cut = p_window * well.momentum(n)
    x_field = make_grid(0.0, L, 201, -p_cut, p_cut, p_nodes)
    values = wigner.wigner_eigen(well, n, x_field.x[:, None], x_field.p[None, :])
    from_p = integrate_samples(values, x_field.p, axis=1)
    x_gap = np.max(np.abs(from_p - eigenbasis.u(well, n, x_field.x) ** 2))

    p_probe = np.linspace(-4 * well.momentum(n), 4 * well.momentum(n), 161)
    xs = np.linspace(0.0, L, x_nodes)
    values = wigner.wigner_eigen(well, n, xs[:, None], p_probe[None, :])
    from_x = integrate_samples(values, xs, axis=0)
    p_gap = np.max(np.abs(from_x - eigenbasis.momentum_density(well, n, p_probe)))
    return float(x_gap), float(p_gap)


def suite_marginals(well=REFERENCE_WELL):
    checks = []
    for n in (1, 10):
        x_gap, p_gap = eigen_marginal_errors(well, n)
        checks.append(Check(f"marginal-x n={n}", x_gap, 1e-4))
        checks.append(Check(f"marginal-p n={n}", p_gap, 1e-6))
    return checks


def suite_orthonormality(well=REFERENCE_WELL, n_top=10):
    x_gap = 0.0
    p_gap = 0.0
    for m in range(1, n_top + 1):
        for n in range(m, n_top + 1):
            target = 1.0 if m == n else 0.0
            x_gap = max(x_gap, abs(eigenbasis.overlap_x(well, m, n) - target))
            cutoff = PHI_CUTOFF * well.hbar / well.length
            p_gap = max(p_gap, abs(eigenbasis.overlap_p(well, m, n, cutoff=cutoff) - target))
    return [
        Check(f"<u_m|u_n> m,n<={n_top}", x_gap, 1e-10),
        Check(f"<phi_m|phi_n> m,n<={n_top}", p_gap, 1e-6),
    ]


def suite_oracle(well=REFERENCE_WELL, samples=100, seed=20031201):
    rng = np.random.default_rng(seed)
    spec = oracle.QuadratureSpec(support=(0.0, well.length), hbar=well.hbar)
    p_scale = 20 * math.pi * well.hbar / well.length
    eigen_gap = 0.0
    cross_gap = 0.0
    for _ in range(samples):
        m, n = (int(v) for v in rng.integers(1, 11, size=2))
        x = float(rng.uniform(0.0, well.length))
        p = float(rng.uniform(-p_scale, p_scale))
        quad = oracle.wigner_quadrature_x(lambda z, n=n: eigenbasis.u(well, n, z), x, p, spec)
        eigen_gap = max(eigen_gap, abs(quad - wigner.wigner_eigen(well, n, x, p)))
        pair = (lambda z, m=m: eigenbasis.u(well, m, z), lambda z, n=n: eigenbasis.u(well, n, z))
        quad = oracle.wigner_quadrature_x(pair, x, p, spec)
        cross_gap = max(cross_gap, abs(quad - wigner.wigner_cross(well, m, n, x, p)))
    return [
        Check(f"closed-form eigen vs quadrature ({samples} pts)", eigen_gap, 1e-8),
        Check(f"closed-form cross vs quadrature ({samples} pts)", cross_gap, 1e-8),
    ]


def suite_revival(well=REFERENCE_WELL, spec=REFERENCE_PACKET, seed=7):
    coeffs = packet.expansion_coefficients(well, spec)
    scales = packet.time_scales(well, spec, coeffs)
    t_rev = scales.t_revival
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, well.length, 50)
    revival = np.max(np.abs(packet.psi(well, coeffs, xs, t_rev) - packet.psi(well, coeffs, xs, 0.0)))
    mirror = np.max(
        np.abs(
            np.abs(packet.psi(well, coeffs, xs, t_rev / 2)) ** 2
            - np.abs(packet.psi(well, coeffs, well.length - xs, 0.0)) ** 2
        )
    )
    return [
        Check("1 - fidelity(T_rev)", abs(1.0 - packet.fidelity(well, coeffs, t_rev)), 1e-10),
        Check("|psi(x,T_rev) - psi(x,0)| (50 pts)", float(revival), 1e-8),
        Check("mirror |psi(x,T_rev/2)|^2 vs |psi(L-x,0)|^2", float(mirror), 1e-8),
        Check("T_rev/T_cl - 80", abs(t_rev / scales.t_classical - 80.0), 0.0),
    ]


def suite_appendix():
    checks = [
        Check(f"sin(z)cos({m}z)/z -> {label}", abs(oracle.sinc_cos_integral(m) - value), 1e-3)
        for m, value, label in ((0, math.pi, "pi"), (1, math.pi / 2, "pi/2"), (2, 0.0, "0"))
    ]
    checks.append(Check("sin^2(z)/z^2 -> pi", abs(oracle.sinc_squared_integral() - math.pi), 1e-3))
    return checks


SUITES = {
    "marginals": suite_marginals,
    "orthonormality": suite_orthonormality,
    "oracle-equivalence": suite_oracle,
    "revival": suite_revival,
    "appendix-a": suite_appendix,
}


def run_suite(name):
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    return SUITES[name]()

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_laguerre

from wigner_well import DomainError, QuadratureSpec, wigner_quadrature_x
from wigner_well.quadrature import integrate_samples
from wigner_well.reference import (
    ClassicalDensity,
    FreeGaussianSpec,
    TwoGaussianSpec,
    classical_density,
    free_gaussian_psi,
    free_gaussian_wigner,
    laguerre,
    sho_eigenfunction,
    sho_wigner,
    two_gaussian_wigner as two_gaussian,
)


def double_integral(values, x, p):
    return float(integrate_samples(integrate_samples(values, p, axis=1), x))


G = FreeGaussianSpec(x0=0.2, p0=1.5, alpha=0.8, mass=2.0)


def test_free_gaussian_peak():
    assert free_gaussian_wigner(G, G.x0, G.p0) == pytest.approx(1 / math.pi, rel=1e-15)


def test_free_gaussian_transport():
    t = 0.9
    assert free_gaussian_wigner(G, G.x0 + G.p0 * t / G.mass, G.p0, t) == pytest.approx(1 / math.pi, rel=1e-15)


@pytest.mark.parametrize("t", [0.0, 0.5, 3.0])
def test_free_gaussian_normalized(t):
    x = np.linspace(-15, 15, 1201)
    p = np.linspace(-6, 9, 801)
    assert double_integral(free_gaussian_wigner(G, x[:, None], p[None, :], t), x, p) == pytest.approx(1, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(x=st.floats(-3, 3), p=st.floats(-3, 5), t=st.floats(0, 5))
def test_free_gaussian_positive(x, p, t):
    assert free_gaussian_wigner(G, x, p, t) > 0


@pytest.mark.parametrize("t", [0.0, 0.7])
def test_free_gaussian_matches_oracle(t):
    spec = QuadratureSpec(halfwidth=40.0, panels=8192, tol=1e-10)
    for x, p in [(0.2, 1.5), (0.9, 0.4), (-1.0, 2.2)]:
        ref = wigner_quadrature_x(lambda z: free_gaussian_psi(G, z, t), x, p, spec)
        assert abs(ref - free_gaussian_wigner(G, x, p, t)) < 1e-8


def test_free_gaussian_spreading_time():
    x = np.linspace(-20, 20, 4001)

    def width(t):
        dens = np.abs(free_gaussian_psi(G, x, t)) ** 2
        mean = integrate_samples(dens * x, x)
        return math.sqrt(integrate_samples(dens * (x - mean) ** 2, x))

    assert width(0.0) == pytest.approx(G.beta / math.sqrt(2), rel=1e-8)
    assert width(G.spreading_time) == pytest.approx(math.sqrt(2) * width(0.0), rel=1e-8)


def test_two_gaussian_reduces_to_single():
    spec = TwoGaussianSpec(0.2, 1.5, -2.0, 0.0, 1.0, 0.0, G.beta)
    x, p = np.meshgrid(np.linspace(-2, 2, 9), np.linspace(-1, 4, 7))
    assert np.allclose(two_gaussian(spec, x, p), free_gaussian_wigner(G, x, p), atol=1e-15, rtol=0)


@pytest.mark.parametrize(
    "args",
    [(-1.0, 2.0, 1.5, -1.0, 1.0, 0.6 + 0.3j, 0.8), (0.0, 3.0, 0.4, 3.0, 1j, 1.0, 0.5), (0.3, 1.0, 0.3, -2.0, 1, -1, 1)],
)
def test_two_gaussian_matches_oracle(args):
    spec = TwoGaussianSpec.normalized(*args)
    quad = QuadratureSpec(halfwidth=12.0, panels=8192, tol=1e-10)
    rng = np.random.default_rng(1)
    for _ in range(25):
        x, p = rng.uniform(-3, 3), rng.uniform(-4, 4)
        assert abs(wigner_quadrature_x(spec.psi, x, p, quad) - two_gaussian(spec, x, p)) < 1e-8


def test_two_gaussian_normalized_integral():
    spec = TwoGaussianSpec.normalized(-0.5, 1.0, 0.5, -1.0, 1.0, 0.6 + 0.3j, 0.8)
    grid_x = np.linspace(-10, 10, 801)
    grid_p = np.linspace(-10, 10, 801)
    total = double_integral(two_gaussian(spec, grid_x[:, None], grid_p[None, :]), grid_x, grid_p)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_two_gaussian_cross_term_oscillates_in_x():
    p0 = 30.0
    gamma = delta = 1 / math.sqrt(2)
    spec = TwoGaussianSpec(0.0, p0, 0.0, -p0, gamma, delta, 0.2)
    assert abs(two_gaussian(spec, 0.0, 0.0)) == pytest.approx(2 * gamma * delta / math.pi, rel=1e-12)
    x = np.linspace(-0.3, 0.3, 6001)
    envelope = np.exp(-(x**2) / spec.beta**2) / math.pi
    ratio = two_gaussian(spec, x, 0.0) / envelope
    crossings = x[:-1][np.sign(ratio[:-1]) != np.sign(ratio[1:])]
    wavenumber = math.pi / np.mean(np.diff(crossings))
    assert wavenumber == pytest.approx(2 * p0, rel=1e-3)


def test_two_gaussian_cross_term_period_in_p():
    xa, xb = 0.7, -0.5
    spec = TwoGaussianSpec(xa, 1.0, xb, 1.0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0.15)
    p = np.linspace(-20, 22, 8001)
    env = np.exp(-(spec.beta**2) * (p - 1.0) ** 2) / math.pi
    ratio = two_gaussian(spec, 0.1, p) / env
    crossings = p[:-1][np.sign(ratio[:-1]) != np.sign(ratio[1:])]
    period = 2 * np.mean(np.diff(crossings))
    assert period == pytest.approx(2 * math.pi / (xa - xb), rel=1e-3)


def test_two_gaussian_normalizing_constructor_uses_overlap():
    spec = TwoGaussianSpec.normalized(0.0, 0.0, 0.1, 0.0, 1.0, 1.0, 1.0)
    x = np.linspace(-12, 12, 4001)
    assert integrate_samples(np.abs(spec.psi(x)) ** 2, x) == pytest.approx(1.0, abs=1e-12)
    assert abs(spec.gamma) ** 2 + abs(spec.delta) ** 2 < 0.6


@pytest.mark.parametrize("n", [0, 1, 2, 7, 30, 50])
def test_laguerre_recurrence(n):
    z = np.linspace(0, 40, 81)
    assert np.allclose(laguerre(n, z), eval_laguerre(n, z), rtol=1e-10, atol=1e-10)


def test_sho_wigner_origin_values():
    assert sho_wigner(0, 0.0, 0.0, 1.0) == 1 / math.pi
    assert sho_wigner(1, 0.0, 0.0, 1.0) == -1 / math.pi


def test_sho_level_range():
    with pytest.raises(ValueError):
        sho_wigner(51, 0.0, 0.0, 1.0)


def test_sho_n3_normalized():
    x = np.linspace(-9, 9, 1201)
    assert double_integral(sho_wigner(3, x[:, None], x[None, :], 1.0), x, x) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("n", [0, 1])
def test_sho_marginals(n):
    b = 0.7
    x = np.linspace(-4, 4, 41)
    p = np.linspace(-14, 14, 2001)
    marginal = integrate_samples(sho_wigner(n, x[:, None], p[None, :], b), p, axis=1)
    assert np.max(np.abs(marginal - sho_eigenfunction(n, x, b) ** 2)) < 1e-8


@pytest.mark.parametrize("n", [0, 2, 5])
def test_sho_matches_oracle(n):
    spec = QuadratureSpec(halfwidth=10.0, panels=8192, tol=1e-10)
    for x, p in [(0.0, 0.0), (0.4, -1.1), (1.3, 0.8)]:
        ref = wigner_quadrature_x(lambda z: sho_eigenfunction(n, z, 1.0), x, p, spec)
        assert abs(ref - sho_wigner(n, x, p, 1.0)) < 1e-8


def test_classical_uniform():
    assert classical_density("uniform-x", 1.0, 0.37) == 1.0
    assert classical_density("uniform-x", 2.0, 2.5) == 0.0
    assert ClassicalDensity("uniform-x", 2.0).integrate() == 1.0


def test_classical_momentum_atoms():
    assert classical_density("dirac-pair-p", 10 * math.pi) == [(-10 * math.pi, 0.5), (10 * math.pi, 0.5)]
    with pytest.raises(TypeError):
        ClassicalDensity("dirac-pair-p", 1.0)(0.0)


@pytest.mark.parametrize("amp", [1.0, 2.5])
def test_classical_sho_centre(amp):
    assert classical_density("sho-x", amp, 0.0) == pytest.approx(1 / (math.pi * amp), rel=1e-15)


def test_classical_sho_outside_support():
    with pytest.raises(DomainError):
        classical_density("sho-x", 1.0, 1.0)
    with pytest.raises(DomainError):
        classical_density("sho-p", 2.0, -3.0)


@pytest.mark.parametrize("kind", ["sho-x", "sho-p"])
def test_classical_sho_normalized(kind):
    density = ClassicalDensity(kind, 1.7)
    assert density.integrate() == pytest.approx(1.0, abs=1e-10)
    assert density.integrate(-0.85, 0.85) == pytest.approx(1 / 3, abs=1e-10)


def test_unknown_kind():
    with pytest.raises(ValueError):
        ClassicalDensity("flat", 1.0)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from ballprolate.identities import fourier_fini_check, plane_wave_integral
from ballprolate.quadrature import (ball_cubature, ball_volume, gauss_jacobi, gauss_legendre,
                                    panel_legendre, radial_rule, sphere_area, sphere_rule,
                                    tridiagonal_eigh, zonal_sphere_integral)


def test_gauss_jacobi_matches_scipy():
    for a, b in ((0.0, 0.0), (0.0, 2.5), (1.0, 3.0), (-0.5, 0.5)):
        rule = gauss_jacobi(15, a, b)
        x, w = special.roots_jacobi(15, a, b)
        order = np.argsort(x)
        assert np.allclose(rule.nodes, x[order], atol=1e-14)
        assert np.allclose(rule.weights, w[order], rtol=1e-12)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 30), beta=st.floats(0.0, 8.0), seed=st.integers(0, 10_000))
def test_gauss_jacobi_exact_for_admissible_polynomials(n, beta, seed):
    rng = np.random.default_rng(seed)
    coef = rng.normal(size=2 * n)
    rule = gauss_jacobi(n, 0.0, beta)
    got = rule.integrate(lambda x: np.polynomial.polynomial.polyval(x, coef))
    exact = integrate.quad(lambda x: np.polynomial.polynomial.polyval(x, coef) * (1 + x) ** beta,
                           -1, 1, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    assert got == pytest.approx(exact, rel=1e-11, abs=1e-11 * np.abs(coef).sum() * 2 ** beta)


def test_gauss_legendre_and_mapping():
    rule = gauss_legendre(10).mapped(0.0, 2.0)
    assert rule.integrate(lambda x: x ** 5) == pytest.approx(64 / 6, rel=1e-14)
    assert rule.exactness_degree == 19


def test_radial_rule_integrates_radial_monomials():
    for d in (1, 2, 3, 5):
        rule = radial_rule(12, d)
        for p in range(0, 20, 3):
            assert rule.integrate(lambda r: r ** p) == pytest.approx(1 / (p + d), rel=1e-13)


def test_panel_rule_handles_oscillation():
    rule = panel_legendre(0.0, 100.0, 40, 20)
    assert rule.integrate(np.cos) == pytest.approx(math.sin(100.0), abs=1e-12)


def test_refinement_is_converged():
    f = lambda x: np.exp(np.sin(3 * x))
    a = gauss_legendre(40).integrate(f)
    b = gauss_legendre(80).integrate(f)
    assert abs(a - b) <= 1e-12 * abs(b)


def test_volumes_and_areas():
    assert ball_volume(2) == pytest.approx(math.pi)
    assert ball_volume(3) == pytest.approx(4 * math.pi / 3)
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)
    assert sphere_area(1) == pytest.approx(2.0)


def test_ball_cubature_examples():
    assert ball_cubature(2).integrate(lambda x: np.ones(len(x))) == pytest.approx(math.pi, rel=1e-13)
    cub = ball_cubature(3, 30, 40)
    assert cub.integrate(lambda x: np.sum(x * x, axis=1)) == pytest.approx(4 * math.pi / 5, rel=1e-13)
    assert ball_cubature(1, 20, 2).integrate(lambda x: x[:, 0] ** 2) == pytest.approx(2 / 3)


def test_ball_cubature_polynomial_exactness_d3():
    cub = ball_cubature(3, 12, 24)
    # int_B x^2 y^2 z^2 = 4 pi / (105 * 9) * ... checked against the product formula
    val = cub.integrate(lambda x: (x[:, 0] * x[:, 1] * x[:, 2]) ** 2)
    exact = 4 * math.pi / 945 / 9 * 9  # Gamma-function formula, 4 pi / 945
    assert val == pytest.approx(exact, rel=1e-12)


def test_sphere_rule_rejects_high_dimension():
    with pytest.raises(ValueError):
        sphere_rule(4, 10)


def test_zonal_sphere_integral_any_dimension():
    for d in (2, 3, 4, 6):
        assert zonal_sphere_integral(d, lambda t: np.ones_like(t)) == pytest.approx(sphere_area(d))


def test_tridiagonal_eigh_against_dense():
    rng = np.random.default_rng(1)
    diag, off = rng.normal(size=30), rng.normal(size=29)
    dense = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    vals, vecs = tridiagonal_eigh(diag, off)
    assert np.allclose(vals, np.linalg.eigvalsh(dense), atol=1e-12)
    assert np.allclose(dense @ vecs, vecs * vals, atol=1e-11)
    sel = tridiagonal_eigh(diag, off, select=(0, 4), eigvals_only=True)
    assert np.allclose(sel, vals[:5])


def test_plane_wave_integral_d2_example():
    rng = np.random.default_rng(0)
    w = rng.uniform(-0.5, 0.5, size=(3, 2))
    cub = ball_cubature(2, 60, 120)
    for wi in w:
        num = cub.integrate(lambda x: np.cos(7.0 * x @ wi))
        assert num == pytest.approx(float(plane_wave_integral(2, 7.0, wi)[0]), abs=1e-10)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("c", [1.0, 5.0])
def test_fourier_fini_residual(d, c):
    rep = fourier_fini_check(d, c)
    assert rep.lhs <= 1e-10

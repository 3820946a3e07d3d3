import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballprolate.ballpoly import (BallPolyIndex, ball_norm_scale, ball_poly_eval,
                                  ball_poly_finite_fourier_radial, ball_poly_operator_eigenvalue,
                                  ball_poly_radial, ball_poly_radial_all,
                                  hankel_jacobi_identity_residual, radial_operator_galerkin)
from ballprolate.harmonics import harmonic_dim
from ballprolate.identities import finite_fourier_check, hankel_jacobi_check
from ballprolate.quadrature import ball_cubature, radial_rule


def _indices(d, max_degree):
    out = []
    for m in range(max_degree + 1):
        for ell in range(1, harmonic_dim(d, m) + 1):
            for k in range((max_degree - m) // 2 + 1):
                out.append(BallPolyIndex(d, m, k, ell))
    return out


@pytest.mark.parametrize("d", [1, 2, 3])
def test_orthonormal_in_ball_by_cubature(d):
    idx = _indices(d, 6)
    cub = ball_cubature(d, 12, 16)
    V = np.array([ball_poly_eval(i, cub.points) for i in idx])
    G = (V * cub.weights) @ V.T
    assert np.max(np.abs(G - np.eye(len(idx)))) < 1e-12


@settings(max_examples=30, deadline=None)
@given(d=st.integers(1, 8), m=st.integers(0, 6), kmax=st.integers(0, 15))
def test_radial_factors_orthonormal_any_dimension(d, m, kmax):
    if harmonic_dim(d, m) == 0:
        return
    rule = radial_rule(2 * kmax + m + 2, d)
    R = ball_poly_radial_all(kmax, m, d, rule.nodes, normalized=True)
    G = (R * rule.weights) @ R.T
    assert np.max(np.abs(G - np.eye(kmax + 1))) < 1e-11


def test_radial_single_matches_block():
    r = np.linspace(0, 1, 7)
    block = ball_poly_radial_all(4, 2, 3, r)
    assert np.allclose(ball_poly_radial(3, 2, 3, r), block[3])
    assert ball_norm_scale(0, 2) == pytest.approx(2.0)


def test_ball_poly_is_polynomial_of_stated_degree():
    # restricted to a line through the origin the degree is m + 2k
    t = np.linspace(-1, 1, 30)
    for m, k in ((0, 2), (1, 1), (2, 3)):
        idx = BallPolyIndex(3, m, k)
        x = np.c_[0.3 * t, -0.5 * t, 0.8 * t] / np.linalg.norm([0.3, -0.5, 0.8])
        v = ball_poly_eval(idx, x)
        fit = np.polynomial.polynomial.polyfit(t, v, idx.degree)
        assert np.allclose(np.polynomial.polynomial.polyval(t, fit), v, atol=1e-11)
        low = np.polynomial.polynomial.polyfit(t, v, idx.degree - 1)
        assert np.max(np.abs(np.polynomial.polynomial.polyval(t, low) - v)) > 1e-6


def test_radial_sign_alternation_at_origin_and_edge():
    for m, d in ((0, 2), (1, 3), (2, 2)):
        vals0 = ball_poly_radial_all(6, 0, d, 0.0)
        assert np.all(np.sign(vals0) == (-1.0) ** np.arange(7))
        vals1 = ball_poly_radial_all(6, m, d, 1.0)
        assert np.all(vals1 > 0)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 7])
def test_galerkin_matrix_is_diagonal_with_operator_eigenvalues(d):
    for m in range(4):
        if harmonic_dim(d, m) == 0:
            continue
        G = radial_operator_galerkin(10, m, d)
        diag = [ball_poly_operator_eigenvalue(k, m, d) for k in range(11)]
        assert np.allclose(G, np.diag(diag), atol=1e-9 * max(diag))


def test_operator_eigenvalue_formula():
    assert ball_poly_operator_eigenvalue(0, 0, 3) == 0
    assert ball_poly_operator_eigenvalue(2, 1, 2) == 5 * 7


@pytest.mark.parametrize("d,c", [(2, 1.0), (2, 5.0), (3, 1.0), (3, 5.0)])
def test_finite_fourier_transform(d, c):
    assert finite_fourier_check(d, c).lhs < 1e-9


def test_finite_fourier_d1_direct():
    rule = radial_rule(60, 1)
    c, tau = 4.0, 0.6
    for m in (0, 1):
        for k in range(4):
            R = ball_poly_radial(k, m, 1, rule.nodes, normalized=True)
            # Y = x/sqrt(2) on {-1, 1}; integral over [-1, 1]
            if m == 0:
                num = 2 * np.dot(rule.weights, np.cos(c * tau * rule.nodes) * R) / math.sqrt(2)
            else:
                num = -2j * np.dot(rule.weights, np.sin(c * tau * rule.nodes) * R) / math.sqrt(2)
            ref = ball_poly_finite_fourier_radial(k, m, 1, c, tau) / math.sqrt(2)
            assert abs(num - ref) < 1e-12


def test_hankel_jacobi_identity():
    assert hankel_jacobi_check().lhs < 1e-10
    assert hankel_jacobi_identity_residual(3, 1.5, 2.0, 0.7) < 1e-13


def test_invalid_index():
    with pytest.raises(ValueError):
        BallPolyIndex(1, 2, 0)
    with pytest.raises(ValueError):
        BallPolyIndex(2, 1, 0, ell=3)
    with pytest.raises(ValueError):
        ball_poly_finite_fourier_radial(0, 0, 2, 1.0, -0.1)

"""Orthogonal polynomials on the unit ball and their finite Fourier transforms.

A ball polynomial of type (k, m) is r^m P~_k^{(0, beta)}(2r^2 - 1) Y(x/r) with
beta = m + d/2 - 1 and P~ the orthonormal Jacobi polynomial. Its total degree
is m + 2k. The radial factor has squared norm 2^-(beta+2) against r^(d-1) dr,
so the ball-orthonormal radial factor carries an extra 2^((beta+2)/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_int, check_pointwise_dim, check_real
from .harmonics import harmonic_dim, sph_basis_eval
from .quadrature import gauss_jacobi
from .specfun import (bessel_j, jacobi_h, jacobi_p, jacobi_p_normalized_all,
                      jacobi_p_normalized_deriv_all)


def radial_beta(m: int, d: int) -> float:
    return m + d / 2.0 - 1.0


def ball_norm_scale(m: int, d: int) -> float:
    """Factor turning r^m P~_k(2r^2-1) into a unit vector of L2(r^(d-1) dr)."""
    return 2.0 ** ((radial_beta(m, d) + 2.0) / 2.0)


@dataclass(frozen=True)
class BallPolyIndex:
    d: int
    m: int
    k: int
    ell: int = 1

    def __post_init__(self):
        check_int(self.d, "d", minimum=1)
        check_int(self.m, "m", minimum=0)
        check_int(self.k, "k", minimum=0)
        n = harmonic_dim(self.d, self.m)
        if n == 0:
            raise ValueError(f"no harmonics of degree {self.m} for d={self.d}")
        check_int(self.ell, "ell", minimum=1, maximum=n)

    @property
    def degree(self) -> int:
        return self.m + 2 * self.k


def ball_poly_radial_all(kmax: int, m: int, d: int, r, normalized: bool = False):
    """Radial factors for k = 0..kmax at r; shape (kmax+1,) + r.shape."""
    r = np.asarray(r, dtype=float)
    beta = radial_beta(m, d)
    vals = jacobi_p_normalized_all(kmax, 0.0, beta, 2 * r * r - 1) * r ** m
    if normalized:
        vals = vals * ball_norm_scale(m, d)
    return vals


def ball_poly_radial(k: int, m: int, d: int, r, normalized: bool = False):
    """r^m P~_k^{(0, m+d/2-1)}(2r^2 - 1).

    With ``normalized=True`` the factor is rescaled to unit norm in
    L2([0, 1], r^(d-1) dr), so that multiplying by an orthonormal spherical
    harmonic gives a unit vector of L2(B^d).
    """
    k = check_int(k, "k", minimum=0)
    m = check_int(m, "m", minimum=0)
    d = check_int(d, "d", minimum=1)
    out = ball_poly_radial_all(k, m, d, r, normalized)[k]
    return out if np.ndim(out) else float(out)


def ball_poly_eval(index: BallPolyIndex, x, normalized: bool = True):
    """P_{k,ell}^{(m)} at points x of shape (n, d); unit L2(B^d) norm by default."""
    d = check_pointwise_dim(index.d)
    x = np.atleast_2d(np.asarray(x, dtype=float))
    r = np.linalg.norm(x, axis=1)
    safe = np.where(r > 0, r, 1.0)
    xhat = x / safe[:, None]
    xhat[r == 0] = np.eye(d)[0]
    rad = ball_poly_radial(index.k, index.m, d, r, normalized)
    return rad * sph_basis_eval(d, index.m, index.ell, xhat)


def ball_poly_operator_eigenvalue(k: int, m: int, d: int) -> int:
    """(m+2k)(m+2k+d): eigenvalue of the c = 0 operator on ball polynomials."""
    k = check_int(k, "k", minimum=0)
    m = check_int(m, "m", minimum=0)
    d = check_int(d, "d", minimum=1)
    return (m + 2 * k) * (m + 2 * k + d)


def _bessel_over_power(order: float, power: float, z):
    """J_order(z) / z^power with the z -> 0 limit filled in (order >= power)."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = bessel_j(order, z) / np.power(np.where(z > 0, z, 1.0), power)
    if np.any(z == 0):
        lim = 1.0 / (2 ** order * math.gamma(order + 1)) if order == power else 0.0
        out = np.where(z == 0, lim, out)
    return out


def ball_poly_finite_fourier_radial(k: int, m: int, d: int, c: float, tau,
                                    normalized: bool = True):
    """Radial factor of the finite Fourier transform of a ball polynomial.

    For f(x) = R_k(|x|) Y(x/|x|) with R_k = r^m P~_k(2r^2-1),

        int_B exp(-i c <x, y>) f(x) dx
            = (2 pi)^(d/2) (-i)^m (-1)^k J_{2k+m+d/2}(c tau) / ((c tau)^(d/2) sqrt(h_k)) Y(y/tau),

    tau = |y|. The ball-orthonormal scaling is applied when ``normalized``.
    """
    k = check_int(k, "k", minimum=0)
    m = check_int(m, "m", minimum=0)
    d = check_int(d, "d", minimum=1)
    c = check_real(c, "c", gt=0.0)
    beta = radial_beta(m, d)
    z = c * np.asarray(tau, dtype=float)
    if np.any(z < 0):
        raise ValueError("tau must be >= 0")
    scale = (2 * math.pi) ** (d / 2) * (-1) ** k / math.sqrt(jacobi_h(k, 0.0, beta))
    if normalized:
        scale *= ball_norm_scale(m, d)
    out = (-1j) ** m * scale * _bessel_over_power(2 * k + m + d / 2.0, d / 2.0, z)
    return complex(out) if np.ndim(out) == 0 else out


def hankel_jacobi_identity_residual(n: int, alpha: float, c: float, x: float,
                                    nodes: int | None = None) -> float:
    """|int_0^1 y^(a+1) J_a(cxy) P_n^{(0,a)}(2y^2-1) dy - (-1)^n J_{2n+a+1}(cx)/(cx)|.

    The integrand is y^(2a+1) times an entire function of y, so the left side
    uses Gauss-Jacobi nodes for that weight on [0, 1].
    """
    n = check_int(n, "n", minimum=0)
    alpha = check_real(alpha, "alpha", gt=-1.0)
    z = check_real(c, "c", gt=0.0) * check_real(x, "x", gt=0.0)
    if nodes is None:
        nodes = n + int(z) + 40
    rule = gauss_jacobi(nodes, 0.0, 2 * alpha + 1)
    y = 0.5 * (1 + rule.nodes)
    w = rule.weights / 2.0 ** (2 * alpha + 2)
    smooth = _bessel_over_power(alpha, alpha, z * y) * z ** alpha
    lhs = float(np.dot(w, smooth * jacobi_p(n, (0.0, alpha), 2 * y * y - 1)))
    rhs = (-1) ** n * bessel_j(2 * n + alpha + 1, z) / z
    return abs(lhs - rhs)


def radial_operator_galerkin(kmax: int, m: int, d: int, nodes: int | None = None):
    """Matrix of the c = 0 radial operator on the P~_k, assembled by quadrature.

    Entry (j, k) is 4 int (1-eta)(1+eta)^(beta+1) P~_j' P~_k' d eta + m(m+d) delta_jk,
    the weak form of the ball operator restricted to the degree-m channel.
    """
    beta = radial_beta(m, d)
    rule = gauss_jacobi(nodes or kmax + 4, 1.0, beta + 1.0)
    dp = jacobi_p_normalized_deriv_all(kmax, 0.0, beta, rule.nodes)
    mat = 4.0 * (dp * rule.weights) @ dp.T
    return mat + m * (m + d) * np.eye(kmax + 1)

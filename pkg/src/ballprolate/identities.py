"""Residual checks for the closed-form identities the solver relies on.

Each function returns BoundReports whose lhs is a residual and rhs its
tolerance, so they can be streamed next to the inequality checks.
"""

from __future__ import annotations

import math

import numpy as np

from .ballpoly import (BallPolyIndex, ball_poly_eval, ball_poly_finite_fourier_radial,
                       hankel_jacobi_identity_residual)
from .harmonics import harmonic_dim, max_harmonic_bound, sph_basis_eval, zonal_kernel
from .quadrature import ball_cubature, sphere_area, sphere_rule, zonal_sphere_integral
from .reports import BoundReport
from .specfun import bessel_j, check_bessel_inequalities


def _random_ball_points(rng, n, d, rmax=1.0):
    x = rng.normal(size=(n, d))
    x /= np.linalg.norm(x, axis=1)[:, None]
    return x * (rmax * rng.uniform(0.0, 1.0, n) ** (1.0 / d))[:, None]


def _random_directions(rng, n, d):
    x = rng.normal(size=(n, d))
    return x / np.linalg.norm(x, axis=1)[:, None]


def plane_wave_integral(d: int, c: float, w):
    """(2 pi)^(d/2) J_{d/2}(c|w|)/(c|w|)^(d/2): int_B exp(i c <x, w>) dx."""
    z = c * np.linalg.norm(np.atleast_2d(w), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = bessel_j(d / 2, z) / np.where(z > 0, z, 1.0) ** (d / 2)
    v = np.where(z > 0, v, 1 / (2 ** (d / 2) * math.gamma(d / 2 + 1)))
    return (2 * math.pi) ** (d / 2) * v


def fourier_fini_check(d: int, c: float, n_pairs: int = 5, seed: int = 0,
                       tol: float = 1e-10) -> BoundReport:
    """Cubature of int_B exp(i c <x, y - z>) dx against the Bessel closed form."""
    rng = np.random.default_rng(seed)
    y, z = _random_ball_points(rng, n_pairs, d), _random_ball_points(rng, n_pairs, d)
    w = y - z
    n_r = 40 + int(2 * c)
    cub = ball_cubature(d, n_r, 2 * n_r if d == 2 else n_r)
    pts, wt = cub.points, cub.weights
    num = np.array([np.dot(wt, np.cos(c * pts @ wi)) for wi in w])
    err = float(np.max(np.abs(num - plane_wave_integral(d, c, w))))
    return BoundReport("fourier_fini", err, tol, {"d": d, "c": c}, rel_tol=0.0)


def hankel_jacobi_check(nmax: int = 10, alphas=(0.0, 0.5, 1.0, 2.5, 5.0, 10.0),
                        cx_values=(0.5, 1.0, 5.0, 20.0, 50.0), tol: float = 1e-10) -> BoundReport:
    """Largest Hankel-Jacobi residual on the grid n <= nmax, alpha, cx."""
    worst, where = 0.0, None
    for a in alphas:
        for n in range(nmax + 1):
            for z in cx_values:
                r = hankel_jacobi_identity_residual(n, a, 1.0, z)
                if r > worst:
                    worst, where = r, (n, a, z)
    return BoundReport("bessel_jacobi", worst, tol, {"k": nmax}, rel_tol=0.0,
                       note=f"worst (n, alpha, cx)={where}")


def finite_fourier_check(d: int, c: float, max_degree: int = 4, n_tau: int = 3,
                         seed: int = 0, tol: float = 1e-9) -> BoundReport:
    """Ball-polynomial finite Fourier transform: cubature against the closed form.

    Compared at points y = tau yhat for every (k, m) with m + 2k <= max_degree
    and ell = 1, using int_B exp(-i c <x, y>) P(x) dx.
    """
    rng = np.random.default_rng(seed)
    n_r = 40 + int(2 * c)
    cub = ball_cubature(d, n_r, 2 * n_r if d == 2 else n_r)
    pts, wt = cub.points, cub.weights
    yhat = _random_directions(rng, n_tau, d)
    tau = rng.uniform(0.2, 1.0, n_tau)
    worst = 0.0
    for m in range(max_degree + 1):
        if harmonic_dim(d, m) == 0:
            continue
        for k in range((max_degree - m) // 2 + 1):
            vals = ball_poly_eval(BallPolyIndex(d, m, k), pts)
            for t, u in zip(tau, yhat):
                num = np.dot(wt, np.exp(-1j * c * t * (pts @ u)) * vals)
                ref = ball_poly_finite_fourier_radial(k, m, d, c, t) * sph_basis_eval(d, m, 1, u)
                worst = max(worst, abs(num - ref))
    return BoundReport("finite_fourier", worst, tol, {"d": d, "c": c, "m": max_degree},
                       rel_tol=0.0)


def addition_check(d: int, nmax: int = 6, n_pairs: int = 20, seed: int = 0,
                   tol: float = 1e-10) -> BoundReport:
    """sum_j Y_j(x) Y_j(y) against the zonal Gegenbauer kernel."""
    rng = np.random.default_rng(seed)
    x, y = _random_directions(rng, n_pairs, d), _random_directions(rng, n_pairs, d)
    worst = 0.0
    for n in range(nmax + 1):
        s = sum(sph_basis_eval(d, n, j, x) * sph_basis_eval(d, n, j, y)
                for j in range(1, harmonic_dim(d, n) + 1))
        worst = max(worst, float(np.max(np.abs(s - zonal_kernel(d, n, np.sum(x * y, axis=1))))))
    return BoundReport("addition", worst, tol, {"d": d, "m": nmax}, rel_tol=0.0)


def normalization_check(d: int, nmax: int = 8, tol: float = 1e-10) -> BoundReport:
    """Orthonormality of the explicit bases (d <= 3) or of the zonal kernel (any d >= 2).

    For d >= 4 it checks int_S Z_n(<x, e>)^2 dsigma(x) = N(d, n)/Omega_{d-1},
    which is the addition formula integrated once.
    """
    worst = 0.0
    if d <= 3:
        dirs, w = sphere_rule(d, 4 * nmax + 8)
        for n in range(nmax + 1):
            cnt = harmonic_dim(d, n)
            if cnt == 0:
                continue
            for n2 in range(n + 1):
                cnt2 = harmonic_dim(d, n2)
                if cnt2 == 0:
                    continue
                A = np.array([sph_basis_eval(d, n, j, dirs) for j in range(1, cnt + 1)])
                B = np.array([sph_basis_eval(d, n2, j, dirs) for j in range(1, cnt2 + 1)])
                G = (A * w) @ B.T
                target = np.eye(cnt) if n == n2 else np.zeros((cnt, cnt2))
                worst = max(worst, float(np.max(np.abs(G - target))))
    else:
        for n in range(nmax + 1):
            val = zonal_sphere_integral(
                d, lambda t: zonal_kernel(d, n, t) ** 2, n + 8)
            worst = max(worst, abs(val - harmonic_dim(d, n) / sphere_area(d)))
            # reproducing property: the same integral equals Z_n(1)
            worst = max(worst, abs(val - zonal_kernel(d, n, 1.0)))
    return BoundReport("normalization", worst, tol, {"d": d, "m": nmax}, rel_tol=0.0)


def max_y_check(d: int, nmax: int = 6, n_points: int = 1000, seed: int = 0) -> BoundReport:
    """max |Y| over a random sphere sample against sqrt(N(d,m)/Omega_{d-1}); worst ratio."""
    rng = np.random.default_rng(seed)
    x = _random_directions(rng, n_points, d)
    worst_ratio, lhs, rhs = -np.inf, 0.0, 1.0
    for n in range(nmax + 1):
        for j in range(1, harmonic_dim(d, n) + 1):
            v = float(np.max(np.abs(sph_basis_eval(d, n, j, x))))
            b = max_harmonic_bound(d, n)
            if v / b > worst_ratio:
                worst_ratio, lhs, rhs = v / b, v, b
    return BoundReport("max_Y", lhs, rhs, {"d": d, "m": nmax})


def bessel_inequality_reports(quick: bool = False) -> list[BoundReport]:
    nus = [0.0, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0, 20.0] if quick else \
        [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 3.5, 5.0, 7.5, 10.0, 15.0, 20.0, 30.0, 50.0]
    xs = np.linspace(0.01, 60.0, 300 if quick else 1200)
    return check_bessel_inequalities(nus, xs)


def identity_suite(quick: bool = False, seed: int = 0) -> list[BoundReport]:
    """Every identity and inequality check, in a fixed order."""
    out = []
    for d in (1, 2, 3):
        for c in (1.0, 5.0):
            out.append(fourier_fini_check(d, c, seed=seed))
    out.append(hankel_jacobi_check(6 if quick else 10))
    for d in (2, 3):
        for c in (1.0, 5.0):
            out.append(finite_fourier_check(d, c, 3 if quick else 4, seed=seed))
        out.append(addition_check(d, seed=seed))
        out.append(max_y_check(d, seed=seed))
    for d in (2, 3, 4):
        out.append(normalization_check(d))
    out.extend(bessel_inequality_reports(quick))
    return out

"""Gaussian quadrature rules and cubature on the unit ball.

Nodes are eigenvalues of the Jacobi recurrence matrix (Golub-Welsch) computed
with the same symmetric tridiagonal eigensolver used by the prolate solver.
Weights come from the Christoffel function 1 / sum_j p_j(x_i)^2, which stays
accurate without forming eigenvectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ._validation import UnsupportedDimensionError, check_int, check_real
from .specfun import jacobi_p_normalized_all, jacobi_recurrence


def tridiagonal_eigh(diag, offdiag, select=None, eigvals_only=False):
    """Eigen-decomposition of a real symmetric tridiagonal matrix (LAPACK stemr).

    ``select`` is an optional ``(lo, hi)`` index range, inclusive. Eigenvalues
    come back in ascending order.
    """
    kwargs = {}
    if select is not None:
        kwargs = {"select": "i", "select_range": select}
    try:
        return eigh_tridiagonal(np.asarray(diag, float), np.asarray(offdiag, float),
                                eigvals_only=eigvals_only, lapack_driver="stemr", **kwargs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise RuntimeError(f"tridiagonal eigensolver did not converge: {exc}") from exc


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights on ``interval`` for the weight of ``kind``."""

    kind: str
    interval: tuple
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    alpha: float = 0.0
    beta: float = 0.0

    def integrate(self, f: Callable) -> float:
        return integrate(self, f)

    def mapped(self, a: float, b: float) -> "QuadratureRule":
        """Affine image on [a, b] of a rule on [-1, 1]; weights are rescaled by the Jacobian."""
        lo, hi = self.interval
        scale = (b - a) / (hi - lo)
        return QuadratureRule(self.kind, (a, b), a + (self.nodes - lo) * scale,
                              self.weights * scale, self.exactness_degree,
                              self.alpha, self.beta)


def gauss_jacobi(n: int, alpha: float = 0.0, beta: float = 0.0) -> QuadratureRule:
    """n-point Gauss rule for (1-x)^alpha (1+x)^beta on [-1, 1]; exact to degree 2n-1."""
    n = check_int(n, "n", minimum=1, maximum=10000)
    alpha = check_real(alpha, "alpha", gt=-1.0)
    beta = check_real(beta, "beta", gt=-1.0)
    b, a = jacobi_recurrence(n, alpha, beta)
    if n == 1:
        nodes = b.copy()
    else:
        nodes = tridiagonal_eigh(b, a, eigvals_only=True)
    p = jacobi_p_normalized_all(n - 1, alpha, beta, nodes)
    weights = 1.0 / np.sum(p * p, axis=0)
    kind = "legendre" if alpha == 0.0 and beta == 0.0 else "jacobi"
    return QuadratureRule(kind, (-1.0, 1.0), nodes, weights, 2 * n - 1, alpha, beta)


def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [-1, 1]."""
    return gauss_jacobi(n, 0.0, 0.0)


def integrate(rule: QuadratureRule, f: Callable) -> float:
    """sum_i w_i f(x_i); raises if f is not finite at a node."""
    vals = np.asarray(f(rule.nodes), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("integrand is not finite at every quadrature node")
    return float(np.dot(rule.weights, vals))


def radial_rule(n: int, d: int) -> QuadratureRule:
    """Rule on [0, 1] for the weight r^(d-1) (Gauss-Jacobi after r = (1+t)/2)."""
    g = gauss_jacobi(n, 0.0, float(d - 1))
    nodes = 0.5 * (1.0 + g.nodes)
    weights = g.weights / 2.0 ** d
    return QuadratureRule("jacobi", (0.0, 1.0), nodes, weights, 2 * n - 1, 0.0, float(d - 1))


def panel_legendre(a: float, b: float, panels: int, n: int = 20) -> QuadratureRule:
    """Composite Gauss-Legendre rule with ``panels`` equal panels on [a, b]."""
    base = gauss_legendre(n)
    edges = np.linspace(a, b, panels + 1)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        r = base.mapped(lo, hi)
        nodes.append(r.nodes)
        weights.append(r.weights)
    return QuadratureRule("legendre", (a, b), np.concatenate(nodes), np.concatenate(weights),
                          2 * n - 1)


def ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1) in R^d."""
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)


@dataclass(frozen=True)
class BallCubature:
    """Tensor cubature on B^d: radial rule for r^(d-1) times a sphere rule.

    ``directions`` / ``sphere_weights`` discretise S^(d-1); ``points`` and
    ``weights`` are the flattened product over the ball.
    """

    d: int
    radial: QuadratureRule
    directions: np.ndarray
    sphere_weights: np.ndarray

    @property
    def points(self) -> np.ndarray:
        r = self.radial.nodes
        return (r[:, None, None] * self.directions[None, :, :]).reshape(-1, self.d)

    @property
    def weights(self) -> np.ndarray:
        return np.outer(self.radial.weights, self.sphere_weights).ravel()

    def integrate(self, f: Callable) -> complex | float:
        """Integrate ``f(points)`` (vectorised over rows of an (n, d) array) over B^d."""
        vals = np.asarray(f(self.points))
        if not np.all(np.isfinite(vals)):
            raise FloatingPointError("integrand is not finite at every cubature node")
        out = np.dot(self.weights, vals)
        return out


def sphere_rule(d: int, n_ang: int):
    """Directions and weights on S^(d-1) for d in {1, 2, 3}.

    d = 2 uses the n_ang-point trapezoid rule in the angle; d = 3 uses
    Gauss-Legendre in cos(theta) (n_ang // 2 nodes) times the trapezoid in phi.
    """
    if d == 1:
        return np.array([[-1.0], [1.0]]), np.array([1.0, 1.0])
    if d == 2:
        th = 2 * math.pi * np.arange(n_ang) / n_ang
        return np.column_stack([np.cos(th), np.sin(th)]), np.full(n_ang, 2 * math.pi / n_ang)
    if d == 3:
        g = gauss_legendre(max(n_ang // 2, 1))
        ph = 2 * math.pi * np.arange(n_ang) / n_ang
        ct = g.nodes[:, None]
        st = np.sqrt(1 - ct * ct)
        dirs = np.stack([st * np.cos(ph)[None, :], st * np.sin(ph)[None, :],
                         np.broadcast_to(ct, (ct.size, n_ang))], axis=-1).reshape(-1, 3)
        w = np.outer(g.weights, np.full(n_ang, 2 * math.pi / n_ang)).ravel()
        return dirs, w
    raise UnsupportedDimensionError(f"full sphere cubature exists for d <= 3, got d={d}")


def ball_cubature(d: int, n_r: int = 200, n_ang: int = 256) -> BallCubature:
    """Cubature on the unit ball B^d for d in {1, 2, 3}."""
    d = check_int(d, "d", minimum=1)
    n_r = check_int(n_r, "n_r", minimum=1)
    n_ang = check_int(n_ang, "n_ang", minimum=1)
    dirs, sw = sphere_rule(d, n_ang)
    return BallCubature(d, radial_rule(n_r, d), dirs, sw)


def zonal_sphere_integral(d: int, g: Callable, n: int = 64) -> float:
    """Integral over S^(d-1) of g(<x, y>) for fixed unit y, any d >= 2.

    Reduces to Omega_{d-2} * int_{-1}^{1} g(t) (1 - t^2)^((d-3)/2) dt.
    """
    d = check_int(d, "d", minimum=2)
    e = (d - 3) / 2.0
    rule = gauss_jacobi(n, e, e)
    return sphere_area(d - 1) * integrate(rule, g)

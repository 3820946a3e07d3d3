"""Ball prolate spheroidal wave functions by spectral expansion in ball polynomials.

In the degree-m channel a ball PSWF is psi(x) = r^m phi(2r^2 - 1) Y(x/r) and
phi solves a Sturm-Liouville problem on [-1, 1] for the Jacobi weight
(1+eta)^beta, beta = m + d/2 - 1. Expanding phi in orthonormal Jacobi
polynomials P~_j^{(0, beta)} turns the problem into the symmetric tridiagonal
eigenproblem

    (diag(j (j + beta + 1)) + (c^2/8) (I + J)) b = a b,   chi = 4a + m(m+d),

with J the Jacobi matrix of the weight. Coefficients are stored as a unit
vector in the ball-orthonormal basis 2^((beta+2)/2) r^m P~_j(2r^2-1), so that
the stored vector has unit l2 norm exactly when psi has unit L2(B^d) norm.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ._validation import AccuracyWarning, check_int, check_pointwise_dim, check_real
from .ballpoly import _bessel_over_power, ball_norm_scale, radial_beta
from .harmonics import max_harmonic_bound, sph_basis_eval
from .quadrature import QuadratureRule, ball_cubature, gauss_jacobi, tridiagonal_eigh
from .reports import BoundReport, fmt_real
from .specfun import bessel_j_orders, jacobi_h, jacobi_p_normalized_all, jacobi_recurrence

TAIL_TOL = 1e-13


@dataclass(frozen=True)
class ProblemParams:
    """One radial eigenproblem family: dimension d, bandwidth c, harmonic degree m."""

    d: int
    c: float
    m: int

    def __post_init__(self):
        object.__setattr__(self, "d", check_int(self.d, "d", minimum=1))
        object.__setattr__(self, "c", check_real(self.c, "c", gt=0.0))
        object.__setattr__(self, "m", check_int(self.m, "m", minimum=0))

    @property
    def beta(self) -> float:
        return radial_beta(self.m, self.d)

    @property
    def gamma_md(self) -> int:
        return self.m * (self.m + self.d)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Matrix-scale operator (chi - m(m+d))/4 truncated to K Jacobi modes."""

    params: ProblemParams
    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def size(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def to_chi(self, a):
        return 4.0 * np.asarray(a) + self.params.gamma_md


def multiplication_matrix(beta: float, K: int):
    """Diagonal and off-diagonal of multiplication by (1 + eta) on P~_j^{(0, beta)}."""
    b, a = jacobi_recurrence(K, 0.0, beta)
    return 1.0 + b, a


def build_radial_matrix(params: ProblemParams, K: int) -> TridiagonalOperator:
    """Tridiagonal Galerkin matrix of the radial operator on K modes."""
    K = check_int(K, "K", minimum=4)
    if K < params.c:
        warnings.warn(f"truncation K={K} is below c={params.c}; expansion will be inaccurate",
                      AccuracyWarning, stacklevel=2)
    j = np.arange(K, dtype=float)
    mdiag, moff = multiplication_matrix(params.beta, K)
    s = params.c ** 2 / 8.0
    return TridiagonalOperator(params, j * (j + params.beta + 1) + s * mdiag, s * moff)


def galerkin_matrix_quadrature(params: ProblemParams, K: int) -> np.ndarray:
    """Dense version of the same matrix assembled from the weak form by Gauss-Jacobi rules.

    Stiffness int (1-eta)(1+eta)^(beta+1) P~_j' P~_k' and mass-type term
    (c^2/8) int (1+eta)^(beta+1) P~_j P~_k are integrated independently of the
    recurrence that defines :func:`build_radial_matrix`.
    """
    from .specfun import jacobi_p_normalized_deriv_all

    beta = params.beta
    stiff_rule = gauss_jacobi(K + 2, 1.0, beta + 1.0)
    dp = jacobi_p_normalized_deriv_all(K - 1, 0.0, beta, stiff_rule.nodes)
    stiff = (dp * stiff_rule.weights) @ dp.T
    mass_rule = gauss_jacobi(K + 2, 0.0, beta)
    p = jacobi_p_normalized_all(K - 1, 0.0, beta, mass_rule.nodes)
    mult = (p * (mass_rule.weights * (1.0 + mass_rule.nodes))) @ p.T
    return stiff + params.c ** 2 / 8.0 * mult


def _two_sided_vector(D, E, lam, twist):
    """Eigenvector of the tridiagonal (D, E) for eigenvalue lam by ratio recurrences.

    Ratios are run inward from both ends to the index ``twist`` where the
    vector is largest; both continued fractions are stable there, and every
    component comes out with small relative error, including tiny ones.
    """
    K = D.size
    v = np.zeros(K)
    v[twist] = 1.0
    rho = np.empty(twist)
    for j in range(twist):
        den = D[j] - lam + (E[j - 1] * rho[j - 1] if j else 0.0)
        rho[j] = -E[j] / den
    for j in range(twist - 1, -1, -1):
        v[j] = rho[j] * v[j + 1]
    sigma = np.zeros(K + 1)
    for j in range(K - 1, twist, -1):
        sigma[j] = -E[j - 1] / (D[j] - lam + (E[j] * sigma[j + 1] if j < K - 1 else 0.0))
    for j in range(twist + 1, K):
        v[j] = sigma[j] * v[j - 1]
    return v / np.linalg.norm(v)


@dataclass
class RadialProlate:
    """One radial eigenpair (k-th eigenvalue of the degree-m channel)."""

    params: ProblemParams
    k: int
    chi: float
    coeffs: np.ndarray
    trunc: int
    tail_bound: float = 0.0

    @property
    def matrix_eigenvalue(self) -> float:
        """(chi - m(m+d))/4, the eigenvalue of the radial matrix."""
        return (self.chi - self.params.gamma_md) / 4.0

    def to_dict(self) -> dict:
        p = self.params
        return {"params": {"d": p.d, "c": p.c, "m": p.m, "beta": p.beta, "gamma_md": p.gamma_md},
                "k": self.k, "chi": self.chi, "coeffs": [float(x) for x in self.coeffs],
                "trunc": self.trunc, "tail_bound": self.tail_bound}

    def to_json(self) -> str:
        return dumps_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "RadialProlate":
        p = data["params"]
        return cls(ProblemParams(int(p["d"]), float(p["c"]), int(p["m"])), int(data["k"]),
                   float(data["chi"]), np.asarray(data["coeffs"], dtype=float),
                   int(data["trunc"]), float(data["tail_bound"]))

    @classmethod
    def from_json(cls, text: str) -> "RadialProlate":
        import json

        return cls.from_dict(json.loads(text))


def dumps_json(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f'"{k}": {dumps_json(v)}' for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        text = fmt_real(x)
        return text if any(ch in text for ch in ".en") else text + ".0"
    if obj is None:
        return "null"
    import json

    return json.dumps(obj)


def _initial_trunc(c: float, k: int) -> int:
    return max(2 * k + 30, math.ceil(math.e * c / 2) + 30)


def solve_prolate_family(params: ProblemParams, kmax: int, K: int | None = None,
                         max_trunc: int = 4096) -> list[RadialProlate]:
    """Eigenpairs k = 0..kmax of one channel from a single truncated matrix."""
    kmax = check_int(kmax, "kmax", minimum=0)
    K = _initial_trunc(params.c, kmax) if K is None else check_int(K, "K", minimum=4)
    K = max(K, kmax + 4)
    while True:
        op = build_radial_matrix(params, K)
        vals, vecs = tridiagonal_eigh(op.diag, op.offdiag, select=(0, kmax))
        out = []
        ok = True
        for k in range(kmax + 1):
            twist = int(np.argmax(np.abs(vecs[:, k])))
            v = _two_sided_vector(op.diag, op.offdiag, vals[k], twist)
            v *= np.sign(v[np.argmax(np.abs(v))])
            tail = abs(v[-1])
            if tail > TAIL_TOL * np.max(np.abs(v)):
                ok = False
                break
            ratio = abs(v[-1] / v[-2]) if v[-2] != 0 else 0.0
            bound = tail * ratio / (1 - ratio) if ratio < 1 else math.inf
            out.append(RadialProlate(params, k, float(op.to_chi(vals[k])), v, K, bound))
        if ok:
            return out
        if 2 * K > max_trunc:
            raise RuntimeError(f"truncation did not converge below K={max_trunc} for {params}")
        K *= 2


def solve_prolate(params: ProblemParams, k: int, K_opt: int | None = None) -> RadialProlate:
    """k-th radial eigenpair (k = 0 has the smallest chi)."""
    k = check_int(k, "k", minimum=0)
    return solve_prolate_family(params, k, K_opt)[k]


def phi_eta(p: RadialProlate, eta):
    """phi(eta) with psi = r^m phi(2r^2-1) Y normalised to unit L2(B^d) norm."""
    eta = np.asarray(eta, dtype=float)
    basis = jacobi_p_normalized_all(p.coeffs.size - 1, 0.0, p.params.beta, eta)
    out = ball_norm_scale(p.params.m, p.params.d) * np.tensordot(p.coeffs, basis, axes=1)
    return out if out.ndim else float(out)


def prolate_eval_radial(p: RadialProlate, r):
    """Radial profile r^m phi(2r^2 - 1) of the unit-norm ball PSWF."""
    r = np.asarray(r, dtype=float)
    out = r ** p.params.m * phi_eta(p, 2 * r * r - 1)
    return out if np.ndim(out) else float(out)


def prolate_eval(p: RadialProlate, ell: int, x):
    """psi_{k,ell}^{(m)}(x) at points x of shape (n, d), d <= 3."""
    d = check_pointwise_dim(p.params.d)
    x = np.atleast_2d(np.asarray(x, dtype=float))
    r = np.linalg.norm(x, axis=1)
    safe = np.where(r > 0, r, 1.0)
    xhat = x / safe[:, None]
    xhat[r == 0] = np.eye(d)[0]
    return prolate_eval_radial(p, r) * sph_basis_eval(d, p.params.m, ell, xhat)


def hankel_profile(p: RadialProlate, x):
    """r^((d-1)/2) times the radial profile: a unit vector of L2(0, 1)."""
    x = np.asarray(x, dtype=float)
    return x ** ((p.params.d - 1) / 2.0) * prolate_eval_radial(p, x)


def _hankel_series(p: RadialProlate, x):
    """H_c applied to the Hankel profile, summed termwise from the Bessel-Jacobi identity."""
    beta, c = p.params.beta, p.params.c
    x = np.asarray(x, dtype=float)
    K = p.coeffs.size
    signs = (-1.0) ** np.arange(K)
    w = signs * p.coeffs / np.sqrt([jacobi_h(j, 0.0, beta) for j in range(K)])
    z = c * x
    jv = bessel_j_orders(beta + 1, K, z, step=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        acc = np.tensordot(w, jv, axes=1) / np.power(np.where(z > 0, z, 1.0), beta + 1)
    if np.any(z == 0):
        acc = np.where(z == 0, w[0] / (2 ** (beta + 1) * math.gamma(beta + 2)), acc)
    # H(x) = (cx)^(-1/2) sum_j b_j (-1)^j J_{2j+beta+1}(cx) / sqrt(h_j)
    scale = ball_norm_scale(p.params.m, p.params.d)
    return scale * c ** (beta + 0.5) * x ** (beta + 0.5) * acc


def hankel_rule(p: RadialProlate, n: int | None = None) -> QuadratureRule:
    """Gauss-Jacobi rule for y^(2 beta + 1) on [0, 1] sized for H_c."""
    if n is None:
        n = max(200, math.ceil(2 * p.params.c) + 4 * p.trunc)
    g = gauss_jacobi(n, 0.0, 2 * p.params.beta + 1)
    return QuadratureRule("jacobi", (0.0, 1.0), 0.5 * (1 + g.nodes),
                          g.weights / 2.0 ** (2 * p.params.beta + 2), g.exactness_degree,
                          0.0, 2 * p.params.beta + 1)


def _hankel_quadrature(p: RadialProlate, x, rule: QuadratureRule):
    beta, c = p.params.beta, p.params.c
    x = np.asarray(x, dtype=float)
    y = rule.nodes
    f = phi_eta(p, 2 * y * y - 1)
    kern = _bessel_over_power(beta, beta, c * np.multiply.outer(x, y))
    # sqrt(cxy) J_beta(cxy) y^(beta+1/2) = c^(beta+1/2) x^(beta+1/2) y^(2beta+1) J_beta/(cxy)^beta
    return c ** (beta + 0.5) * x ** (beta + 0.5) * (kern @ (rule.weights * f))


def finite_hankel_apply(p: RadialProlate, x, rule="series"):
    """H_c^{(beta)} applied to the Hankel profile of ``p`` at x in (0, 1].

    ``rule`` is "series" (Bessel-Jacobi expansion, relatively accurate even
    for tiny eigenvalues), "quadrature" (default Gauss-Jacobi rule with a
    node-doubling check), or an explicit :class:`QuadratureRule` on [0, 1]
    for the weight y^(2 beta + 1).
    """
    if isinstance(rule, str) and rule == "series":
        out = _hankel_series(p, x)
    elif isinstance(rule, str) and rule == "quadrature":
        r1 = hankel_rule(p)
        out = _hankel_quadrature(p, x, r1)
        out2 = _hankel_quadrature(p, x, hankel_rule(p, 2 * r1.nodes.size))
        scale = max(np.max(np.abs(out2)), 1e-300)
        if np.max(np.abs(out - out2)) > 1e-11 * scale:
            warnings.warn("finite Hankel quadrature not converged under node doubling",
                          AccuracyWarning, stacklevel=2)
        out = out2
    elif isinstance(rule, QuadratureRule):
        out = _hankel_quadrature(p, x, rule)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    return out if np.ndim(out) else float(out)


@dataclass
class SpectralEigenvalues:
    """Integral-operator eigenvalues attached to one radial eigenpair."""

    alpha_H: float
    mu_modulus: float
    nu_Q: float
    commutation_residual: float
    alpha_ratio: float = math.nan
    mu_phase: complex = 1.0
    flagged: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"alpha_H": self.alpha_H, "mu_modulus": self.mu_modulus, "nu_Q": self.nu_Q,
                "commutation_residual": self.commutation_residual}

    def to_json(self) -> str:
        return dumps_json(self.to_dict())


def hankel_alpha_ratio(p: RadialProlate) -> float:
    """Hankel eigenvalue from the small-x behaviour of both sides of H phi = alpha phi.

    As x -> 0 the eigenrelation reduces to
    alpha phi(-1) = c^(beta+1/2) b_0 sqrt(h_0) / (2^(2beta+2) Gamma(beta+1)),
    which only needs relatively accurate leading coefficients.
    """
    beta, c = p.params.beta, p.params.c
    h0 = jacobi_h(0, 0.0, beta)
    at_minus_one = float(np.dot(p.coeffs, jacobi_p_normalized_all(p.coeffs.size - 1, 0.0, beta,
                                                                   np.array(-1.0))))
    logmag = ((beta + 0.5) * math.log(c) + 0.5 * math.log(h0)
              - (2 * beta + 2) * math.log(2.0) - math.lgamma(beta + 1))
    return p.coeffs[0] * math.exp(logmag) / at_minus_one


def commutation_points(n: int = 64) -> np.ndarray:
    return (np.arange(n) + 1.0) / n


def hankel_eigenvalue(p: RadialProlate, rule="series") -> SpectralEigenvalues:
    """Hankel eigenvalue alpha (Rayleigh quotient), |mu| and nu = c alpha^2.

    F_c psi = mu psi with mu = (2 pi)^(d/2) (-i)^m c^((1-d)/2) alpha, and the
    concentration operator Q_c = (c/2 pi)^d F_c* F_c then has eigenvalue
    nu = (c/2 pi)^d |mu|^2 = c alpha^2.
    """
    d, c, m = p.params.d, p.params.c, p.params.m
    rq_rule = hankel_rule(p, max(64, p.trunc + 40))
    y = rq_rule.nodes
    prof = phi_eta(p, 2 * y * y - 1)
    # both H phi and phi carry y^(beta+1/2); the rule absorbs y^(2beta+1)
    h = finite_hankel_apply(p, y, rule) / y ** (p.params.beta + 0.5)
    alpha = float(np.dot(rq_rule.weights, h * prof) / np.dot(rq_rule.weights, prof * prof))
    xs = commutation_points()
    lhs = finite_hankel_apply(p, xs, rule)
    rhs = alpha * hankel_profile(p, xs)
    denom = abs(alpha) * np.max(np.abs(hankel_profile(p, xs)))
    resid = float(np.max(np.abs(lhs - rhs)) / denom) if denom > 0 else math.inf
    mu_mod = (2 * math.pi) ** (d / 2) * c ** ((1 - d) / 2) * abs(alpha)
    nu = c * alpha * alpha
    phase = (-1j) ** m * (1 if alpha >= 0 else -1)
    out = SpectralEigenvalues(alpha, mu_mod, nu, resid, hankel_alpha_ratio(p), phase)
    if resid > 1e-6:
        out.flagged = True
        out.notes.append(f"eigenrelation residual {resid:.3g} exceeds 1e-6")
    if not 0.0 < nu < 1.0:
        out.flagged = True
        out.notes.append(f"nu={nu!r} outside (0, 1)")
    return out


def chebyshev_grid(n: int, a: float = 0.0, b: float = 1.0) -> np.ndarray:
    """n Chebyshev-Lobatto points on [a, b], increasing."""
    t = -np.cos(np.pi * np.arange(n) / (n - 1))
    return a + (b - a) * (t + 1) / 2


def sup_norm(p: RadialProlate, grid_size: int = 512):
    """(max_x |psi(x)|, argmax radius) over all unit-norm harmonics of degree m.

    Uses max_r |r^m phi(2r^2-1)| times sqrt(N(d,m)/Omega_{d-1}), which is the
    exact maximum over B^d for the zonal choice of harmonic.
    """
    grid_size = check_int(grid_size, "grid_size", minimum=512)
    r = chebyshev_grid(grid_size)
    vals = np.abs(prolate_eval_radial(p, r))
    i = int(np.argmax(vals))
    return float(vals[i] * max_harmonic_bound(p.params.d, p.params.m)), float(r[i])


def local_maxima(p: RadialProlate, grid_size: int = 4096):
    """Positions and values of the local maxima of |phi(eta)| on [-1, 1]."""
    eta = chebyshev_grid(grid_size, -1.0, 1.0)
    v = np.abs(phi_eta(p, eta))
    idx = [i for i in range(1, grid_size - 1) if v[i] >= v[i - 1] and v[i] > v[i + 1]]
    if v[-1] > v[-2]:
        idx.append(grid_size - 1)
    if v[0] > v[1]:
        idx.insert(0, 0)
    return eta[idx], v[idx]


def ball_poly_coefficients(p: RadialProlate) -> np.ndarray:
    """int_{B^d} psi r^m P~_j(2r^2-1) Y: coefficients on the Jacobi-normalised ball polynomials."""
    return p.coeffs / ball_norm_scale(p.params.m, p.params.d)


def coeff_decay_bound(j: int, params: ProblemParams, mu_modulus: float) -> float:
    """Upper bound for |int psi P_j| from the finite-Fourier image of P_j."""
    d, c, m = params.d, params.c, params.m
    e = 2 * j + m + (d + 1) / 2.0
    logv = ((d / 2) * math.log(2 * math.pi) + (2 * j + m) * math.log(c)
            - (4 * j + 2 * m + d) * math.log(2.0) - math.log(4 * j + 2 * m + d)
            - math.log(mu_modulus) + e * math.log(math.e * c / e))
    return math.exp(logv)


def coeff_decay_report(p: RadialProlate, mu: SpectralEigenvalues) -> list[BoundReport]:
    """Per-coefficient decay bound; reports with j >= ec/2 have condition_met set."""
    coeffs = ball_poly_coefficients(p)
    pr = p.params
    out = []
    for j, b in enumerate(coeffs):
        params = {"d": pr.d, "c": pr.c, "m": pr.m, "k": p.k, "j": j}
        rhs = coeff_decay_bound(j, pr, mu.mu_modulus)
        out.append(BoundReport(f"coeff_decay[j={j}]", abs(b), rhs, params,
                               condition_met=j >= math.e * pr.c / 2))
    return out


def fourier_image_check(p: RadialProlate, ell: int = 1, mu: SpectralEigenvalues | None = None,
                        n_samples: int = 5, seed: int = 0, n_r: int = 80,
                        n_ang: int = 96) -> BoundReport:
    """Fourier inversion of the claimed transform of psi over B^d(0, c).

    The transform of the band-limited extension of psi is
    (2 pi)^d / (mu c^d) psi(-xi/c) on |xi| <= c and 0 outside. Inverting it by
    cubature on B^d(0, c) must reproduce psi at sample points; the report's
    lhs is the largest relative deviation and rhs the tolerance 1e-6.
    """
    d, c, m = p.params.d, p.params.c, p.params.m
    check_pointwise_dim(d)
    mu = mu or hankel_eigenvalue(p)
    mu_c = mu.mu_phase * mu.mu_modulus
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n_samples, d))
    pts *= (rng.uniform(0.05, 0.95, n_samples) / np.linalg.norm(pts, axis=1))[:, None]
    cub = ball_cubature(d, n_r, n_ang)
    xi = c * cub.points
    hat = (2 * math.pi) ** d / (mu_c * c ** d) * prolate_eval(p, ell, -xi / c)
    w = cub.weights * c ** d
    recon = np.array([np.dot(w, np.exp(1j * xi @ x) * hat) for x in pts]) / (2 * math.pi) ** d
    exact = prolate_eval(p, ell, pts)
    scale = max(np.max(np.abs(exact)), 1e-300)
    dev = float(np.max(np.abs(recon - exact)) / scale)
    alt_ratio = mu.mu_modulus / math.sqrt(mu.nu_Q) if mu.nu_Q > 0 else math.inf
    return BoundReport("fourier_image", dev, 1e-6, {"d": d, "c": c, "m": m, "k": p.k},
                       note=f"constant with sqrt(nu) in place of |mu| is off by {alt_ratio:.17g}")

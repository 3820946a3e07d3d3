"""Almost band-limited test functions and the prolate and ball-polynomial projectors.

Test functions have the pure form f(x) = R(|x|) Y_ell^m(x/|x|), so projections
onto either orthonormal system reduce to weighted radial integrals over [0, 1].
The Fourier transform is the unitary one,
f^(xi) = (2 pi)^(-d/2) int f(x) exp(-i <x, xi>) dx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaincc

from ._validation import check_int, check_pointwise_dim, check_real
from .ballpoly import ball_norm_scale, ball_poly_radial_all, radial_beta
from .harmonics import harmonic_dim, max_harmonic_bound, sph_basis_eval
from .prolate import (ProblemParams, hankel_eigenvalue, prolate_eval, prolate_eval_radial,
                      solve_prolate_family)
from .quadrature import ball_cubature, gauss_legendre, radial_rule
from .reports import BoundReport
from .specfun import bessel_j, bessel_j_orders, jacobi_h

PROJECTION_COLUMNS = ("kind", "d", "m", "c", "N", "error", "rhs_sec4", "rhs_intro",
                      "eps_term", "spectral_term", "condition_met", "pass")


@dataclass(frozen=True)
class TestFunction:
    """f(x) = r^m exp(-r^2/(2 sigma^2)) Y_ell^m(x/r), optionally band-limited to |xi| <= band.

    Its transform is (-i)^m sigma^(2m+d) rho^m exp(-sigma^2 rho^2/2) Y_ell^m(xi/rho),
    cut to rho <= band when ``band`` is finite.
    """

    __test__ = False

    d: int
    m: int
    ell: int
    sigma: float
    band: float = math.inf

    @property
    def kappa(self) -> float:
        return self.m + self.d / 2.0

    @property
    def amplitude(self) -> float:
        return self.sigma ** (2 * self.m + self.d)

    def _full_norm_sq(self) -> float:
        return self.amplitude * math.gamma(self.kappa) / 2.0

    def eps_for(self, c: float) -> float:
        """eps(c) = sqrt(int_{|xi|>c} |f^|^2 / ||f||^2) for the underlying Gaussian."""
        c = check_real(c, "c", ge=0.0)
        return math.sqrt(gammaincc(self.kappa, (self.sigma * c) ** 2))

    @property
    def norm(self) -> float:
        """||f||_{L2(R^d)}, counting the band cut."""
        if math.isinf(self.band):
            return math.sqrt(self._full_norm_sq())
        eps = self.eps_for(self.band)
        return math.sqrt(self._full_norm_sq() * (1 - eps * eps))

    def fourier_radial(self, rho):
        """Radial factor of f^ without the (-i)^m phase."""
        rho = np.asarray(rho, dtype=float)
        out = self.amplitude * rho ** self.m * np.exp(-0.5 * (self.sigma * rho) ** 2)
        return np.where(rho <= self.band, out, 0.0)

    def radial(self, r, n: int = 96):
        """Radial profile R(r). The band-limited case uses the Hankel inversion integral."""
        r = np.asarray(r, dtype=float)
        if math.isinf(self.band):
            return r ** self.m * np.exp(-0.5 * (r / self.sigma) ** 2)
        beta = radial_beta(self.m, self.d)
        rule = gauss_legendre(n).mapped(0.0, self.band)
        rho = rule.nodes
        g = self.fourier_radial(rho) * rho ** (self.d / 2.0)
        rr = np.atleast_1d(r)
        z = np.outer(rr, rho)
        safe = np.where(rr > 0, rr, 1.0)
        # J_beta(r rho) r^(1-d/2) = r^m (J_beta(z)/z^beta) rho^beta
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = bessel_j(beta, z) / np.where(z > 0, z, 1.0) ** beta
        ratio = np.where(z > 0, ratio, 1.0 / (2 ** beta * math.gamma(beta + 1)))
        vals = (ratio * (g * rho ** beta * rule.weights)).sum(axis=1) * safe ** self.m
        vals = np.where(rr > 0, vals, vals if self.m == 0 else 0.0)
        return vals.reshape(r.shape) if r.ndim else float(vals[0])

    def __call__(self, x):
        d = check_pointwise_dim(self.d)
        x = np.atleast_2d(np.asarray(x, dtype=float))
        r = np.linalg.norm(x, axis=1)
        safe = np.where(r > 0, r, 1.0)
        xhat = x / safe[:, None]
        xhat[r == 0] = np.eye(d)[0]
        return self.radial(r) * sph_basis_eval(d, self.m, self.ell, xhat)

    def ball_coefficients(self, kmax: int, normalized: bool = True, n: int = 160):
        """<f, r^m P~_k(2r^2-1) Y> over B^d for k = 0..kmax.

        The band-limited case uses the exact reduction
        (-1)^k sigma^(2m+d)/sqrt(h_k) int_0^band rho^(m+d/2-1) e^(-sigma^2 rho^2/2) J_{2k+m+d/2}(rho) d rho,
        which avoids evaluating the Hankel inversion in space.
        """
        kmax = check_int(kmax, "kmax", minimum=0)
        beta = radial_beta(self.m, self.d)
        if math.isinf(self.band):
            rule = radial_rule(n, self.d)
            basis = ball_poly_radial_all(kmax, self.m, self.d, rule.nodes, normalized)
            return basis @ (rule.weights * self.radial(rule.nodes))
        rule = gauss_legendre(n).mapped(0.0, self.band)
        rho = rule.nodes
        weight = (rule.weights * self.fourier_radial(rho) * rho ** (self.d / 2.0 - 1.0))
        js = bessel_j_orders(self.kappa, kmax + 1, rho, step=2)
        h = np.array([jacobi_h(k, 0.0, beta) for k in range(kmax + 1)])
        sign = (-1.0) ** np.arange(kmax + 1)
        out = sign * (js @ weight) / np.sqrt(h)
        return out * ball_norm_scale(self.m, self.d) if normalized else out


def make_gaussian_test(d: int, m: int, ell: int = 1, sigma: float = 1.0,
                       verify: bool = True) -> TestFunction:
    """Gaussian test function of pure type (m, ell), checked against quadrature.

    With ``verify`` the analytic transform is compared with a Hankel quadrature
    at ten radii and the norm with a radial quadrature; mismatches above 1e-8
    raise ``RuntimeError``.
    """
    d = check_int(d, "d", minimum=1, maximum=3)
    m = check_int(m, "m", minimum=0)
    if harmonic_dim(d, m) == 0:
        raise ValueError(f"no harmonics of degree {m} for d={d}")
    ell = check_int(ell, "ell", minimum=1, maximum=harmonic_dim(d, m))
    sigma = check_real(sigma, "sigma", gt=0.0)
    f = TestFunction(d, m, ell, sigma)
    if verify:
        rho = np.linspace(0.1, 5.0, 10) / sigma
        err = np.max(np.abs(hankel_transform_quadrature(f, rho) - f.fourier_radial(rho)))
        if err > 1e-8 * f.amplitude:
            raise RuntimeError(f"Fourier descriptor mismatch {err:.3e}")
        rule = gauss_legendre(200).mapped(0.0, 14.0 * sigma)
        quad = float(np.dot(rule.weights, f.radial(rule.nodes) ** 2 * rule.nodes ** (d - 1)))
        if abs(quad - f.norm ** 2) > 1e-8 * f.norm ** 2:
            raise RuntimeError("norm mismatch")
    return f


def hankel_transform_quadrature(f: TestFunction, rho, n: int = 400):
    """rho^(1-d/2) int_0^inf R(r) J_beta(r rho) r^(d/2) dr on a truncated Gauss-Legendre rule."""
    beta = radial_beta(f.m, f.d)
    rule = gauss_legendre(n).mapped(0.0, 14.0 * f.sigma)
    r = rule.nodes
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    kern = bessel_j(beta, np.outer(rho, r))
    vals = kern @ (rule.weights * f.radial(r) * r ** (f.d / 2.0))
    return vals * rho ** (1 - f.d / 2.0)


def eps_quadrature(f: TestFunction, c: float, n: int = 400) -> float:
    """eps(c) from quadrature of the transform tail; oracle for ``eps_for``."""
    k = f.d - 1
    tail = gauss_legendre(n).mapped(c, c + 14.0 / f.sigma)
    total = gauss_legendre(n).mapped(0.0, c + 14.0 / f.sigma)
    num = np.dot(tail.weights, f.fourier_radial(tail.nodes) ** 2 * tail.nodes ** k)
    den = np.dot(total.weights, f.fourier_radial(total.nodes) ** 2 * total.nodes ** k)
    return math.sqrt(num / den)


def bandlimit(f: TestFunction, c: float) -> TestFunction:
    """B_c f: the transform cut to |xi| <= c (an orthogonal projection on L2(R^d))."""
    c = check_real(c, "c", gt=0.0)
    return TestFunction(f.d, f.m, f.ell, f.sigma, min(c, f.band))


@dataclass
class ProjectionReport:
    kind: str
    d: int
    m: int
    c: float
    N: int
    error: float
    rhs_sec4: float
    rhs_intro: float
    eps_term: float
    spectral_term: float
    condition_met: bool
    passed: bool
    coefficients: np.ndarray = field(default=None, repr=False)
    extra: dict = field(default_factory=dict)

    def row(self) -> dict:
        return {"kind": self.kind, "d": self.d, "m": self.m, "c": self.c, "N": self.N,
                "error": self.error, "rhs_sec4": self.rhs_sec4, "rhs_intro": self.rhs_intro,
                "eps_term": self.eps_term, "spectral_term": self.spectral_term,
                "condition_met": self.condition_met, "pass": self.passed}

    def as_bound(self) -> BoundReport:
        rhs = max(self.rhs_sec4, self.rhs_intro)
        return BoundReport(f"theorem_{'B' if self.kind == 'prolate' else 'C'}", self.error, rhs,
                           {"d": self.d, "c": self.c, "m": self.m, "k": self.N},
                           condition_met=self.condition_met, rel_tol=1e-12)


def _residual_norm(values, basis, weights):
    """Coefficients of the orthogonal projection and the L2 norm of the residual."""
    coeffs = basis @ (weights * values)
    resid = values - coeffs @ basis
    return coeffs, math.sqrt(float(np.dot(weights, resid * resid)))


def _radial_samples(f: TestFunction, n: int):
    rule = radial_rule(n, f.d)
    return rule, f.radial(rule.nodes)


def theorem_b_constants(d: int, m: int, c: float) -> tuple[float, float]:
    """(constant for the gate N >= ec/2, constant for the gate N >= ec/4) of the prolate bound."""
    beta = max(radial_beta(m, d), 0.0)
    sec4 = ((c / math.sqrt(2 * math.pi)) ** (d / 2) * math.pi ** (d / 4)
            / math.sqrt(math.gamma(d / 2 + 1)) * 1.5 * math.sqrt(3 * beta)
            * max_harmonic_bound(d, m))
    intro = 1.5 * (c / (4 * math.pi) ** 0.25) ** d * math.sqrt(3 * beta / (d / 2 + 1))
    return sec4, intro


def project_prolate(f: TestFunction, c: float, N: int, n_quad: int | None = None,
                    family=None) -> ProjectionReport:
    """S_N f on the first N+1 prolates of channel (m, ell) and its bound.

    rhs_sec4 = (2 eps + C |mu_N| sqrt(chi_N)) ||f|| requires N >= ec/2; rhs_intro
    uses the alternative constant and N >= ec/4. Pass/fail uses the larger
    right side among the gates that hold. Both constants carry sqrt(m + d/2 - 1),
    so for d = 2, m = 0 the stated bound is 2 eps ||f|| and is tested as such.
    """
    c = check_real(c, "c", gt=0.0)
    N = check_int(N, "N", minimum=0)
    d, m = f.d, f.m
    fam = family if family is not None else solve_prolate_family(ProblemParams(d, c, m), N)
    fam = fam[: N + 1]
    rule, vals = _radial_samples(f, n_quad or max(160, 4 * N + 60))
    basis = np.array([prolate_eval_radial(p, rule.nodes) for p in fam])
    coeffs, err = _residual_norm(vals, basis, rule.weights)
    ev = hankel_eigenvalue(fam[N])
    eps = 0.0 if f.band <= c else f.eps_for(c)
    norm = f.norm
    c4, ci = theorem_b_constants(d, m, c)
    growth = ev.mu_modulus * math.sqrt(fam[N].chi)
    rhs4 = (2 * eps + c4 * growth) * norm
    rhsi = (2 * eps + ci * growth) * norm
    g4, gi = N >= math.e * c / 2, N >= math.e * c / 4
    cond = g4 or gi
    rhs = max([r for r, g in ((rhs4, g4), (rhsi, gi)) if g], default=0.0)
    ok = err <= rhs * (1 + 1e-12) if cond else True
    return ProjectionReport("prolate", d, m, c, N, err, rhs4, rhsi, 2 * eps * norm,
                            max(c4, ci) * growth * norm, cond, ok, coeffs,
                            {"gate_sec4": g4, "gate_intro": gi, "mu": ev.mu_modulus,
                             "chi": fam[N].chi})


def theorem_c_terms(d: int, m: int, c: float, N: int) -> dict:
    """Pieces of the ball-polynomial bound: hypothesis, log argument, C_N and the power."""
    e = 2 * (N + 1) + m + (d + 1) / 2.0
    arg = math.e * c / e
    hyp = N >= (math.e * c - m - (d + 1) / 2.0) / 2.0
    lnL = math.log(arg)
    bracket = 1 + 1 / (4 * lnL) if lnL != 0 else -math.inf
    abs_bracket = 1 + 1 / (4 * abs(lnL)) if lnL != 0 else math.inf
    pre = 1.0 / (2 ** (2 * N + m + d / 2 + 3) * math.sqrt(math.e * c * (4 * N + 3 * m + d + 4)))
    power = math.exp(e * lnL)
    return {"hypothesis": hyp, "log_argument": arg, "bracket": bracket,
            "abs_bracket": abs_bracket, "prefactor": pre, "power": power}


def project_ballpoly(f: TestFunction, c: float, N: int, n_quad: int | None = None) -> ProjectionReport:
    """Pi_N f on the first N+1 ball polynomials of channel (m, ell) and its bound.

    The stated C_N contains [1 + 1/(4 ln L)]^(1/2), L = ec/(2N+m+2+(d+1)/2).
    Under the hypothesis L < 1, so the bracket is real only for L < e^(-1/4);
    outside that range condition_met is false. The variant with |ln L|, which
    the geometric-tail argument actually produces, is reported in ``extra``.
    """
    c = check_real(c, "c", gt=0.0)
    N = check_int(N, "N", minimum=0)
    d, m = f.d, f.m
    rule, vals = _radial_samples(f, n_quad or max(160, 4 * N + 60))
    basis = ball_poly_radial_all(N, m, d, rule.nodes, normalized=True)
    coeffs, err = _residual_norm(vals, basis, rule.weights)
    t = theorem_c_terms(d, m, c, N)
    eps = 0.0 if f.band <= c else f.eps_for(c)
    norm = f.norm
    cond = t["hypothesis"] and t["bracket"] > 0
    spectral = t["prefactor"] * math.sqrt(t["bracket"]) * t["power"] if t["bracket"] > 0 else math.nan
    rhs = (2 * eps + spectral) * norm if cond else math.nan
    abs_rhs = (2 * eps + t["prefactor"] * math.sqrt(t["abs_bracket"]) * t["power"]) * norm
    ok = err <= rhs * (1 + 1e-12) if cond else True
    return ProjectionReport("ballpoly", d, m, c, N, err, rhs, rhs, 2 * eps * norm,
                            spectral * norm, cond, ok, coeffs,
                            {**t, "rhs_abs_log": abs_rhs,
                             "pass_abs_log": bool(t["hypothesis"] and err <= abs_rhs)})


def ineq_ball_bound(k: int, m: int, d: int, c: float) -> float:
    """Right side of the coefficient lemma, per unit ||f||_{L2(R^d)}."""
    e = 2 * k + m + (d + 1) / 2.0
    log = (-(2 * k + m + d / 2 + 1) * math.log(2.0)
           - 0.5 * math.log(2 * math.e * c * (4 * k + 3 * m + d)) + e * math.log(math.e * c / e))
    return math.exp(log)


def ineq_ball_check(f: TestFunction, c: float, kmax: int) -> list[BoundReport]:
    """|<B_c f, r^m P~_k Y>| against the lemma for k = 0..kmax (gate k >= ec/2).

    The derivation of this bound ends with a factor ||f||_{L2(R^d)} that its
    stated form omits; it is applied here with f replaced by B_c f.
    """
    g = bandlimit(f, c)
    coeffs = g.ball_coefficients(kmax, normalized=False)
    out = []
    for k, a in enumerate(coeffs):
        rhs = ineq_ball_bound(k, f.m, f.d, c) * g.norm
        out.append(BoundReport("ineq_ball", abs(float(a)), rhs,
                               {"d": f.d, "c": c, "m": f.m, "k": k},
                               condition_met=k >= math.e * c / 2))
    return out


def compare_projectors(f: TestFunction, c: float, N_range) -> list[dict]:
    """Per N, both projection errors and both bound values (data only)."""
    N_range = list(N_range)
    fam = solve_prolate_family(ProblemParams(f.d, c, f.m), max(N_range))
    rows = []
    for N in N_range:
        rows.append(project_prolate(f, c, N, family=fam).row())
        rows.append(project_ballpoly(f, c, N).row())
    return rows


def projection_reports(f: TestFunction, c: float, N_range) -> list[BoundReport]:
    """Theorem B and Theorem C reports over ``N_range``."""
    N_range = list(N_range)
    fam = solve_prolate_family(ProblemParams(f.d, c, f.m), max(N_range))
    out = []
    for N in N_range:
        out.append(project_prolate(f, c, N, family=fam).as_bound())
        out.append(project_ballpoly(f, c, N).as_bound())
    return out


def mixed_channel_check(c: float = 5.0, sigma: float = 1.0, count: int = 8,
                        n_r: int = 60, n_ang: int = 64) -> BoundReport:
    """Two-channel d = 2 input projected with the global chi ordering, by cubature.

    f = f_0 + f_1 with f_0 of type (0, 1) and f_1 of type (1, 1). The first
    ``count`` prolates of channels m = 0, 1 (sorted by chi, then m) are
    orthonormal on the disc, and the cubature coefficients of f must equal the
    channel-wise radial ones. lhs is the largest deviation in either check.
    """
    f0 = make_gaussian_test(2, 0, 1, sigma, verify=False)
    f1 = make_gaussian_test(2, 1, 1, sigma, verify=False)
    fams = {m: solve_prolate_family(ProblemParams(2, c, m), count) for m in (0, 1)}
    order = sorted(((p.chi, m, p.k) for m in (0, 1) for p in fams[m]))[:count]
    cub = ball_cubature(2, n_r, n_ang)
    pts, w = cub.points, cub.weights
    vals = f0(pts) + f1(pts)
    psis = np.array([prolate_eval(fams[m][k], 1, pts) for _, m, k in order])
    gram = (psis * w) @ psis.T
    coeff_cub = psis @ (w * vals)
    rule = radial_rule(200, 2)
    radial = {m: (f0 if m == 0 else f1).radial(rule.nodes) for m in (0, 1)}
    coeff_rad = np.array([np.dot(rule.weights, radial[m] * prolate_eval_radial(fams[m][k], rule.nodes))
                          for _, m, k in order])
    dev = max(float(np.max(np.abs(gram - np.eye(count)))),
              float(np.max(np.abs(coeff_cub - coeff_rad))))
    return BoundReport("mixed_channel", dev, 1e-10, {"d": 2, "c": c, "m": 1, "k": count - 1},
                       rel_tol=0.0, note="order=" + ";".join(f"{m}:{k}" for _, m, k in order))

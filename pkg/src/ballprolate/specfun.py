"""Scalar special functions: Gamma, Bessel J, Jacobi and Gegenbauer polynomials.

Everything is binary64. Bessel J is computed here rather than borrowed so the
algorithm (and its switch points) can be validated against independent
oracles in the test-suite.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import AccuracyWarning, check_int, check_real
from .reports import BoundReport

_EPS = np.finfo(float).eps
# Elbert's constant in the lower bound for J_nu(nu).
ALPHA0 = 0.0943498
_AIRY_CONST = math.gamma(1.0 / 3.0) / (2.0 ** (2.0 / 3.0) * 3.0 ** (1.0 / 6.0) * math.pi)

BESSEL_MAX_ORDER = 300.0
BESSEL_MAX_ARG = 1000.0


# --------------------------------------------------------------------------- Gamma

def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments.

    Raises
    ------
    ValueError
        If ``x <= 0``.
    OverflowError
        If ``x > 171``; use :func:`log_gamma_fn` instead.
    """
    x = check_real(x, "x")
    if x <= 0:
        raise ValueError(f"gamma_fn is defined here for x > 0 only, got {x}")
    if x > 171.0:
        raise OverflowError(f"gamma_fn({x}) overflows binary64; use log_gamma_fn")
    return math.gamma(x)


def log_gamma_fn(x: float) -> float:
    """Natural log of Gamma for positive real arguments."""
    x = check_real(x, "x")
    if x <= 0:
        raise ValueError(f"log_gamma_fn is defined here for x > 0 only, got {x}")
    return math.lgamma(x)


# --------------------------------------------------------------------------- Bessel J

@dataclass(frozen=True)
class BesselEvaluation:
    nu: float
    x: float
    value: float
    est_abs_error: float


def _series(nu, x):
    """Ascending power series; x > 0 (array)."""
    half = 0.5 * x
    t = np.exp(nu * np.log(half) - math.lgamma(nu + 1.0))
    s = t.copy()
    acc = np.abs(t)
    q = -half * half
    for k in range(1, 400):
        t = t * q / (k * (nu + k))
        s = s + t
        acc = acc + np.abs(t)
        if np.all(np.abs(t) <= 1e-17 * np.abs(s)):
            break
    return s, acc


def _miller(nu, x):
    """Backward recurrence normalised by the Neumann sum
    (x/2)^f = sum_i (f+2i) Gamma(f+i)/i! J_{f+2i}(x), f = frac(nu)."""
    n = int(math.floor(nu))
    f = nu - n
    xmax = float(np.max(x))
    top = max(n, 0) + int(xmax + math.sqrt(400.0 * max(n, xmax, 1.0))) + 20
    top += top % 2  # even start so the Neumann weights line up
    y_next = np.zeros_like(x)
    y_cur = np.full_like(x, 1e-30)
    total = np.zeros_like(x)
    keep = {}
    want = {n, n + 1} if n >= 0 else {0, 1}
    big = 1e200
    for k in range(top, -1, -1):
        if k in want:
            keep[k] = y_cur.copy()
        if k % 2 == 0:
            i = k // 2
            if i == 0:
                w = math.gamma(f + 1.0)
            else:
                w = (f + 2 * i) * math.exp(math.lgamma(f + i) - math.lgamma(i + 1.0))
            total = total + w * y_cur
        if k == 0:
            break
        y_prev = (2.0 * (f + k) / x) * y_cur - y_next
        y_next, y_cur = y_cur, y_prev
        scale = np.where(np.abs(y_cur) > big, 1.0 / big, 1.0)
        if np.any(scale != 1.0):
            y_cur = y_cur * scale
            y_next = y_next * scale
            total = total * scale
            for key in keep:
                keep[key] = keep[key] * scale
    norm = np.power(0.5 * x, f) / total
    if n >= 0:
        value = keep[n] * norm
    else:
        # one downward step below order f
        value = (2.0 * f / x) * keep[0] * norm - keep[1] * norm
    return value, top


def bessel_j_orders(nu0: float, count: int, x, step: int = 1):
    """J_{nu0 + step*i}(x) for i = 0..count-1 from a single Miller sweep.

    All requested orders share the fractional part of ``nu0``, so one backward
    recurrence with the Neumann-sum normalisation yields every value. Returns
    an array of shape (count,) + x.shape. Values below the binary64 range
    relative to J_frac(x) come back as 0. Requires nu0 >= 0 and x <= 1000.
    """
    nu0 = check_real(nu0, "nu0", ge=0.0)
    count = check_int(count, "count", minimum=1)
    step = check_int(step, "step", minimum=1)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < 0) or np.any(xa > BESSEL_MAX_ARG):
        raise ValueError("x must lie in [0, 1000]")
    n0 = int(math.floor(nu0))
    f = nu0 - n0
    orders = n0 + step * np.arange(count)
    out = np.zeros((count,) + xa.shape)
    pos = xa > 0
    if not np.all(pos):
        zero_vals = np.where(orders + f == 0.0, 1.0, 0.0)
        out[:, ~pos] = zero_vals[:, None]
    if not np.any(pos):
        return out.reshape((count,) + np.shape(x))
    xp = xa[pos]
    n_hi = int(orders[-1])
    xmax = float(np.max(xp))
    top = n_hi + int(xmax + math.sqrt(400.0 * max(n_hi, xmax, 1.0))) + 20
    top += top % 2
    slot = {int(o): i for i, o in enumerate(orders)}
    kept = np.zeros((count, xp.size))
    y_next = np.zeros_like(xp)
    y_cur = np.full_like(xp, 1e-30)
    total = np.zeros_like(xp)
    big = 1e200
    for k in range(top, -1, -1):
        if k in slot:
            kept[slot[k]] = y_cur
        if k % 2 == 0:
            i = k // 2
            w = math.gamma(f + 1.0) if i == 0 else \
                (f + 2 * i) * math.exp(math.lgamma(f + i) - math.lgamma(i + 1.0))
            total = total + w * y_cur
        if k == 0:
            break
        y_prev = (2.0 * (f + k) / xp) * y_cur - y_next
        y_next, y_cur = y_cur, y_prev
        scale = np.where(np.abs(y_cur) > big, 1.0 / big, 1.0)
        if np.any(scale != 1.0):
            y_cur, y_next, total = y_cur * scale, y_next * scale, total * scale
            kept *= scale
    out[:, pos] = kept * (np.power(0.5 * xp, f) / total)
    return out.reshape((count,) + np.shape(x))


def _hankel_asymptotic(nu, x):
    mu = 4.0 * nu * nu
    omega = x - (0.5 * nu + 0.25) * math.pi
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if np.all(np.abs(term) < 1e-17):
            break
        if k % 2 == 1:
            q = q + (-1) ** ((k - 1) // 2) * term
        else:
            p = p + (-1) ** (k // 2) * term
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(omega) - q * np.sin(omega))


def _use_series(nu, x):
    return (x < 4.0) | (x * x < 4.0 * (nu + 1.0))


def bessel_j(nu: float, x):
    """Bessel function of the first kind J_nu(x) for real order nu > -1, x >= 0.

    ``x`` may be a scalar or an array of any shape. The algorithm is the
    ascending series when ``x < 4`` or ``x^2 < 4(nu+1)`` (terms decrease from
    the start), Miller backward recurrence with the Neumann-sum normalisation
    for ``x <= 1000``, and the Hankel asymptotic expansion beyond.

    Orders in (-1, 0) are accepted because the one-dimensional Hankel problem
    needs J_{-1/2}.
    """
    nu = check_real(nu, "nu")
    if nu <= -1.0:
        raise ValueError(f"order must be > -1, got {nu}")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    if np.any(xa < 0) or not np.all(np.isfinite(xa)):
        raise ValueError("argument must be finite and >= 0")
    if nu > BESSEL_MAX_ORDER or np.any(xa > BESSEL_MAX_ARG):
        warnings.warn(f"J_{nu} outside the validated range (nu <= 300, x <= 1000)",
                      AccuracyWarning, stacklevel=2)
    out = np.empty_like(xa)
    zero = xa == 0.0
    out[zero] = 1.0 if nu == 0.0 else (0.0 if nu > 0 else np.inf)
    pos = ~zero
    ser = pos & _use_series(nu, xa)
    asym = pos & ~ser & (xa > BESSEL_MAX_ARG)
    mil = pos & ~ser & ~asym
    if np.any(ser):
        out[ser] = _series(nu, xa[ser])[0]
    if np.any(mil):
        out[mil] = _miller(nu, xa[mil])[0]
    if np.any(asym):
        out[asym] = _hankel_asymptotic(nu, xa[asym])
    return float(out[0]) if scalar else out.reshape(np.shape(x))


def bessel_j_eval(nu: float, x: float) -> BesselEvaluation:
    """Scalar J_nu(x) together with a heuristic absolute-error estimate."""
    x = check_real(x, "x", ge=0.0)
    value = bessel_j(nu, x)
    if x == 0.0:
        err = 0.0
    elif _use_series(nu, np.array(x)):
        _, acc = _series(nu, np.array([x]))
        err = 8 * _EPS * float(acc[0])
    elif x <= BESSEL_MAX_ARG:
        _, top = _miller(nu, np.array([x]))
        err = 4 * _EPS * math.sqrt(top) * max(1.0, abs(value))
    else:
        err = math.nan
    return BesselEvaluation(float(nu), x, value, err)


def spherical_bessel(n: int, alpha: float, c: float, x):
    """sqrt(2(2n+alpha+1)) J_{2n+alpha+1}(cx) / sqrt(cx); orthonormal on (0, inf)."""
    n = check_int(n, "n", minimum=0)
    c = check_real(c, "c", gt=0.0)
    order = 2 * n + alpha + 1.0
    z = c * np.asarray(x, dtype=float)
    return math.sqrt(2.0 * order) * bessel_j(order, z) / np.sqrt(z)


# --------------------------------------------------------------------------- Jacobi

@dataclass(frozen=True)
class JacobiParams:
    """Exponents of the weight (1-x)^alpha (1+x)^beta on [-1, 1]."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValueError(f"Jacobi exponents must exceed -1, got {self.alpha}, {self.beta}")


def jacobi_recurrence(n: int, alpha: float, beta: float):
    """Diagonal ``b`` (length n) and off-diagonal ``a`` (length n-1) of the
    Jacobi matrix of the orthonormal polynomials for (1-x)^alpha (1+x)^beta:

        x p_j = a_j p_{j+1} + b_j p_j + a_{j-1} p_{j-1}.
    """
    s = alpha + beta
    j = np.arange(n, dtype=float)
    b = np.empty(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        b[:] = (beta * beta - alpha * alpha) / ((2 * j + s) * (2 * j + s + 2))
    if n:
        b[0] = (beta - alpha) / (s + 2.0)
    j = j[:-1]
    # (j+s+1)/(2j+s+1) -> 1 at j = 0, also when s = -1
    ratio = np.ones_like(j)
    if j.size > 1:
        ratio[1:] = (j[1:] + s + 1) / (2 * j[1:] + s + 1)
    a = (2.0 / (2 * j + s + 2)) * np.sqrt(
        (j + 1) * (j + alpha + 1) * (j + beta + 1) * ratio / (2 * j + s + 3)
    )
    return b, a


def jacobi_mass(alpha: float, beta: float) -> float:
    """Integral of (1-x)^alpha (1+x)^beta over [-1, 1]."""
    return math.exp((alpha + beta + 1) * math.log(2.0) + math.lgamma(alpha + 1)
                    + math.lgamma(beta + 1) - math.lgamma(alpha + beta + 2))


def jacobi_h(n: int, alpha: float, beta: float) -> float:
    """Squared weighted L2 norm h_n of P_n^{(alpha, beta)}."""
    s = alpha + beta
    if n == 0:
        return jacobi_mass(alpha, beta)
    return math.exp((s + 1) * math.log(2.0) + math.lgamma(n + alpha + 1)
                    + math.lgamma(n + beta + 1) - math.lgamma(n + 1)
                    - math.log(2 * n + s + 1) - math.lgamma(n + s + 1))


def _params(p, alpha, beta):
    if isinstance(p, JacobiParams):
        return p.alpha, p.beta
    if alpha is None:
        alpha, beta = p
    JacobiParams(alpha, beta)
    return float(alpha), float(beta)


def jacobi_p(n: int, p, x, beta=None):
    """Classical Jacobi polynomial P_n^{(alpha, beta)}(x) by forward recurrence.

    ``p`` is a :class:`JacobiParams`, an ``(alpha, beta)`` pair, or ``alpha``
    with ``beta`` passed separately.
    """
    n = check_int(n, "n", minimum=0, maximum=5000)
    if isinstance(p, (int, float)) and beta is not None:
        alpha, beta = float(p), float(beta)
        JacobiParams(alpha, beta)
    else:
        alpha, beta = _params(p, None, None)
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if x.ndim else float(p0)
    s = alpha + beta
    p1 = (alpha + 1) + 0.5 * (s + 2) * (x - 1)
    for k in range(2, n + 1):
        c0 = 2 * k * (k + s) * (2 * k + s - 2)
        c1 = (2 * k + s - 1) * ((2 * k + s) * (2 * k + s - 2) * x + alpha * alpha - beta * beta)
        c2 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + s)
        p0, p1 = p1, (c1 * p1 - c2 * p0) / c0
    return p1 if x.ndim else float(p1)


def jacobi_p_normalized_all(n: int, alpha: float, beta: float, x):
    """Orthonormal Jacobi polynomials of degrees 0..n at x; shape (n+1,) + x.shape."""
    x = np.asarray(x, dtype=float)
    b, a = jacobi_recurrence(n + 1, alpha, beta)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0 / math.sqrt(jacobi_mass(alpha, beta))
    if n >= 1:
        out[1] = (x - b[0]) * out[0] / a[0]
    for j in range(1, n):
        out[j + 1] = ((x - b[j]) * out[j] - a[j - 1] * out[j - 1]) / a[j]
    return out


def jacobi_p_normalized(n: int, p, x, beta=None):
    """P_n^{(alpha, beta)}(x) / sqrt(h_n), via the orthonormal three-term recurrence."""
    n = check_int(n, "n", minimum=0, maximum=5000)
    if isinstance(p, (int, float)) and beta is not None:
        alpha, beta = float(p), float(beta)
        JacobiParams(alpha, beta)
    else:
        alpha, beta = _params(p, None, None)
    vals = jacobi_p_normalized_all(n, alpha, beta, x)[n]
    return vals if np.ndim(vals) else float(vals)


def jacobi_p_normalized_deriv_all(n: int, alpha: float, beta: float, x):
    """Derivatives of the orthonormal Jacobi polynomials of degrees 0..n.

    Uses d/dx P_k^{(a,b)} = (k+a+b+1)/2 P_{k-1}^{(a+1,b+1)}.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros((n + 1,) + x.shape)
    if n == 0:
        return out
    shifted = jacobi_p_normalized_all(n - 1, alpha + 1, beta + 1, x)
    for k in range(1, n + 1):
        scale = 0.5 * (k + alpha + beta + 1) * math.sqrt(
            jacobi_h(k - 1, alpha + 1, beta + 1) / jacobi_h(k, alpha, beta))
        out[k] = scale * shifted[k - 1]
    return out


# --------------------------------------------------------------------------- Gegenbauer

def gegenbauer_c(n: int, lam: float, x):
    """Gegenbauer polynomial C_n^{(lam)}(x).

    For ``lam == 0`` (d = 2) the renormalised limit ``(2/n) T_n`` is returned
    (and 1 for n = 0), which keeps ``C_n(t)/C_n(1)`` meaningful.
    """
    n = check_int(n, "n", minimum=0)
    lam = check_real(lam, "lam", ge=0.0)
    x = np.asarray(x, dtype=float)
    if n == 0:
        out = np.ones_like(x)
    elif lam == 0.0:
        t0, t1 = np.ones_like(x), x.copy()
        for _ in range(1, n):
            t0, t1 = t1, 2 * x * t1 - t0
        out = (2.0 / n) * t1
    else:
        c0, c1 = np.ones_like(x), 2 * lam * x
        for k in range(1, n):
            c0, c1 = c1, (2 * (k + lam) * x * c1 - (k + 2 * lam - 1) * c0) / (k + 1)
        out = c1
    return out if x.ndim else float(out)


def gegenbauer_at_one(n: int, lam: float) -> float:
    """C_n^{(lam)}(1) = Gamma(n+2 lam)/(Gamma(2 lam) Gamma(n+1)), with the lam=0 limit."""
    if n == 0:
        return 1.0
    if lam == 0.0:
        return 2.0 / n
    return math.exp(math.lgamma(n + 2 * lam) - math.lgamma(2 * lam) - math.lgamma(n + 1))


# --------------------------------------------------------------------------- inequalities

def olenko_constant(alpha: float) -> float:
    """Bound c_alpha on sup_x sqrt(x)|J_alpha(x)|."""
    if abs(alpha) <= 0.5:
        return math.sqrt(2.0 / math.pi)
    a3 = alpha ** (1.0 / 3.0)
    return 0.675 * math.sqrt(a3 + 1.9 / a3 + 1.1 / alpha)


def elbert_lower(nu: float) -> float:
    """Lower bound for J_nu(nu)."""
    return _AIRY_CONST / (nu + ALPHA0) ** (1.0 / 3.0)


def batir_bounds(x: float):
    """Lower and upper bounds for Gamma(x+1) (exponent x + 1/2)."""
    base = (x + 0.5) / math.e
    power = (x + 0.5) * math.log(base)
    return math.sqrt(2 * math.e) * math.exp(power), math.sqrt(2 * math.pi) * math.exp(power)


def _worst(name, params, lhs, rhs, rel_tol=1e-12):
    """Report the grid point with the smallest relative slack."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    rel = (rhs - lhs) / np.maximum(np.abs(rhs), 1e-300)
    i = int(np.argmin(rel))
    return BoundReport(name, lhs[i], rhs[i], params=params, rel_tol=rel_tol)


def check_bessel_inequalities(nu_grid, x_grid) -> list[BoundReport]:
    """Evaluate the classical Bessel and Gamma inequalities on a grid.

    Each report carries the grid point with the least relative slack. Ratio
    inequalities of the form J_nu(nu t)/(t^nu J_nu(nu)) use t = x/nu for
    grid points with 0 < x <= nu.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    x_grid = x_grid[x_grid > 0]
    reports = []
    for nu in nu_grid:
        nu = float(nu)
        params = {"nu": nu}
        jx = bessel_j(nu, x_grid)
        reports.append(_worst("boundJ", params, np.sqrt(x_grid) * np.abs(jx),
                              np.full_like(x_grid, olenko_constant(nu))))
        with np.errstate(divide="ignore"):
            lhs = np.exp(np.log(np.abs(jx)) - nu * np.log(x_grid) + nu * math.log(2.0)
                         + math.lgamma(nu + 1.0))
        ok = np.isfinite(lhs)
        reports.append(_worst("estim1", params, lhs[ok], np.ones(ok.sum())))
        if nu <= 0:
            continue
        jnn = bessel_j(nu, nu)
        reports.append(BoundReport("elbert", elbert_lower(nu), jnn, params=params))
        t = x_grid[x_grid <= nu] / nu
        if t.size == 0:
            continue
        jt = bessel_j(nu, nu * t)
        ok = jt > 0
        t, jt = t[ok], jt[ok]
        ratio = np.exp(np.log(jt) - nu * np.log(t) - math.log(jnn))
        reports.append(_worst("ratio_lower", params, np.ones_like(t), ratio))
        reports.append(_worst("ratio_upper", params, ratio, np.exp(nu * (1 - t))))
        reports.append(_worst("paris_lower", params,
                              np.exp(nu * nu * (1 - t * t) / (4 * nu + 4)), ratio))
        reports.append(_worst("paris_upper", params, ratio,
                              np.exp(nu * nu * (1 - t * t) / (2 * nu + 4))))
        lb = elbert_lower(nu) * np.exp(nu * np.log(t) + nu * nu * (1 - t * t) / (4 * nu + 4))
        reports.append(_worst("L-B", params, lb, jt))
    for x in x_grid:
        if x > 170:
            continue
        lo, hi = batir_bounds(float(x))
        g = math.gamma(x + 1.0)
        reports.append(BoundReport("batir_lower", lo, g, params={"x": float(x)}))
        reports.append(BoundReport("batir_upper", g, hi, params={"x": float(x)}))
    return reports

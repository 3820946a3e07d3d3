"""Spherical harmonics: dimensions, zonal kernels and explicit real bases for d <= 3."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._validation import UnsupportedDimensionError, check_int
from .quadrature import sphere_area
from .specfun import bessel_j, gegenbauer_at_one, gegenbauer_c


def harmonic_dim(d: int, m: int) -> int:
    """N(d, m): dimension of degree-m spherical harmonics in d variables.

    For d = 1 the "sphere" is {-1, 1} and only m in {0, 1} survive.
    """
    d = check_int(d, "d", minimum=1)
    m = check_int(m, "m", minimum=0)
    if m == 0:
        return 1
    if d == 1:
        return 1 if m == 1 else 0
    value = Fraction(2 * m + d - 2, m) * math.comb(m + d - 3, m - 1)
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True)
class HarmonicSpace:
    d: int
    m: int

    @property
    def count(self) -> int:
        return harmonic_dim(self.d, self.m)

    @property
    def sphere_area(self) -> float:
        return sphere_area(self.d)


def zonal_kernel(d: int, n: int, t):
    """(N(d,n)/Omega_{d-1}) C_n^{((d-2)/2)}(t) / C_n^{((d-2)/2)}(1).

    By the addition formula this is sum_j Y_j(x) Y_j(y) at t = <x, y>.
    """
    d = check_int(d, "d", minimum=2)
    n = check_int(n, "n", minimum=0)
    lam = (d - 2) / 2.0
    ratio = gegenbauer_c(n, lam, t) / gegenbauer_at_one(n, lam)
    return harmonic_dim(d, n) / sphere_area(d) * ratio


def _spherical_angles(xhat):
    xhat = np.atleast_2d(np.asarray(xhat, dtype=float))
    ct = np.clip(xhat[:, 2], -1.0, 1.0)
    phi = np.arctan2(xhat[:, 1], xhat[:, 0])
    return ct, phi


def _normalized_legendre(n: int, q: int, x):
    """sqrt((2n+1)/(4 pi) (n-q)!/(n+q)!) P_n^q(x), without the Condon-Shortley phase."""
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.maximum(1.0 - x * x, 0.0))
    pqq = np.full_like(x, 1.0 / math.sqrt(4 * math.pi))
    for i in range(1, q + 1):
        pqq = math.sqrt((2 * i + 1) / (2.0 * i)) * s * pqq
    if n == q:
        return pqq
    p_prev, p_cur = pqq, math.sqrt(2 * q + 3) * x * pqq
    for k in range(q + 2, n + 1):
        a = math.sqrt((4 * k * k - 1) / (k * k - q * q))
        b = math.sqrt(((k - 1) ** 2 - q * q) / (4 * (k - 1) ** 2 - 1))
        p_prev, p_cur = p_cur, a * (x * p_cur - b * p_prev)
    return p_cur


def sph_basis_eval(d: int, m: int, ell: int, xhat):
    """Real orthonormal spherical harmonic Y_ell^{(m)} on S^(d-1), 1 <= ell <= N(d, m).

    d = 1: {1/sqrt 2, x/sqrt 2}. d = 2: 1/sqrt(2 pi) for m = 0, else
    cos(m theta)/sqrt(pi) (ell = 1) and sin(m theta)/sqrt(pi) (ell = 2).
    d = 3: ell = 1 is the zonal one; ell = 2q, 2q+1 carry cos(q phi), sin(q phi).
    ``xhat`` has shape (n, d) or (d,).
    """
    d = check_int(d, "d", minimum=1)
    m = check_int(m, "m", minimum=0)
    count = harmonic_dim(d, m)
    ell = check_int(ell, "ell", minimum=1, maximum=max(count, 1))
    if count == 0:
        raise ValueError(f"no spherical harmonics of degree {m} in dimension {d}")
    arr = np.asarray(xhat, dtype=float)
    scalar = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.shape[1] != d:
        raise ValueError(f"expected points of dimension {d}, got shape {arr.shape}")
    if d == 1:
        out = np.sign(arr[:, 0]) ** m / math.sqrt(2.0)
    elif d == 2:
        th = np.arctan2(arr[:, 1], arr[:, 0])
        if m == 0:
            out = np.full(len(arr), 1.0 / math.sqrt(2 * math.pi))
        elif ell == 1:
            out = np.cos(m * th) / math.sqrt(math.pi)
        else:
            out = np.sin(m * th) / math.sqrt(math.pi)
    elif d == 3:
        ct, phi = _spherical_angles(arr)
        q = ell // 2
        leg = _normalized_legendre(m, q, ct)
        if q == 0:
            out = leg
        elif ell % 2 == 0:
            out = math.sqrt(2.0) * leg * np.cos(q * phi)
        else:
            out = math.sqrt(2.0) * leg * np.sin(q * phi)
    else:
        raise UnsupportedDimensionError(
            f"explicit spherical harmonics exist for d <= 3 only, got d={d}")
    return float(out[0]) if scalar else out


def max_harmonic_bound(d: int, m: int) -> float:
    """sqrt(N(d,m)/Omega_{d-1}): pointwise bound for any unit-norm degree-m harmonic."""
    return math.sqrt(harmonic_dim(d, m) / sphere_area(d))


def sphere_fourier_factor(m: int, d: int, w) -> complex | np.ndarray:
    """(2 pi)^(d/2) (-i)^m J_{m+(d-2)/2}(w) / w^((d-2)/2).

    Multiplies Y(yhat) in the sphere Fourier transform of a degree-m harmonic.
    At w = 0 the limit J_nu(w)/w^nu -> 1/(2^nu Gamma(nu+1)) is used.
    """
    m = check_int(m, "m", minimum=0)
    d = check_int(d, "d", minimum=1)
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("w must be >= 0")
    nu = m + (d - 2) / 2.0
    shift = (d - 2) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = bessel_j(nu, w) / np.power(np.where(w > 0, w, 1.0), shift)
    if np.any(w == 0):
        lim = 1.0 / (2 ** shift * math.gamma(shift + 1.0)) if m == 0 else 0.0
        ratio = np.where(w == 0, lim, ratio)
    out = (2 * math.pi) ** (d / 2) * (-1j) ** m * ratio
    return complex(out) if np.ndim(out) == 0 else out

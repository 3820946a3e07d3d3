"""Named report families with their standard parameter grids.

``run_family(name, **overrides)`` returns a list of BoundReport in a fixed
order. ``quick=True`` shrinks the grids where a family is expensive.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .approx import (ineq_ball_check, make_gaussian_test, mixed_channel_check,
                     project_ballpoly, project_prolate)
from .ballpoly import ball_poly_operator_eigenvalue
from .harmonics import harmonic_dim
from .identities import identity_suite
from .prolate import (ProblemParams, build_radial_matrix, coeff_decay_report,
                      fourier_image_check, galerkin_matrix_quadrature, hankel_eigenvalue,
                      solve_prolate_family)
from .reports import BoundReport
from .spectra import (build_spectrum, counting_check, decay_bounds_check, hs_check,
                      supnorm_bounds_check, trace_check)

DELTAS = (0.1, 0.5, 0.9)


def solver_reports(quick: bool = False) -> list[BoundReport]:
    """Small-c degeneration and the chi sandwich chi(0) <= chi(c) <= chi(0) + c^2."""
    out = []
    kmax = 10
    for d in (1, 2, 3):
        chi_err, vec_err = 0.0, 0.0
        for m in range(4):
            fam = solve_prolate_family(ProblemParams(d, 1e-8, m), kmax)
            for p in fam:
                chi_err = max(chi_err, abs(p.chi - ball_poly_operator_eigenvalue(p.k, m, d)))
                e = np.zeros(p.coeffs.size)
                e[p.k] = 1.0
                vec_err = max(vec_err, float(np.max(np.abs(p.coeffs - e))))
        out.append(BoundReport("c0_chi", chi_err, 1e-8, {"d": d, "c": 1e-8}, rel_tol=0.0))
        out.append(BoundReport("c0_coeffs", vec_err, 1e-8, {"d": d, "c": 1e-8}, rel_tol=0.0))
    for c in (1.0, 5.0, 10.0):
        for d in (1, 2, 3):
            low = up = -math.inf
            for m in range(4):
                for p in solve_prolate_family(ProblemParams(d, c, m), kmax):
                    chi0 = ball_poly_operator_eigenvalue(p.k, m, d)
                    low = max(low, chi0 - p.chi)
                    up = max(up, p.chi - chi0 - c * c)
            tol = 1e-10 * c * c
            out.append(BoundReport("chi_sandwich_lower", low, tol, {"d": d, "c": c}, rel_tol=0.0))
            out.append(BoundReport("chi_sandwich_upper", up, tol, {"d": d, "c": c}, rel_tol=0.0))
    return out


# (d, m) pairs realising beta = 0, 0.5, 1, 2.5, 5
GALERKIN_CASES = ((2, 0), (3, 0), (2, 1), (3, 2), (2, 5))


def galerkin_reports(K: int = 40) -> list[BoundReport]:
    """Recurrence-built matrix against float64 weak-form quadrature, relative to max entry."""
    out = []
    for d, m in GALERKIN_CASES:
        pr = ProblemParams(d, 5.0, m)
        A = build_radial_matrix(pr, K).dense()
        B = galerkin_matrix_quadrature(pr, K)
        rel = float(np.max(np.abs(A - B)) / np.max(np.abs(A)))
        out.append(BoundReport("galerkin_rel", rel, 1e-11,
                               {"d": d, "c": 5.0, "m": m, "k": K}, rel_tol=0.0,
                               note=f"beta={pr.beta!r}"))
    return out


def hankel_reports(quick: bool = False) -> list[BoundReport]:
    """Worst relative eigenrelation residual of the finite Hankel transform per (d, c)."""
    out = []
    for d in (1, 2, 3):
        for c in (1.0, 5.0):
            worst = 0.0
            for m in range(3):
                if harmonic_dim(d, m) == 0:
                    continue
                for p in solve_prolate_family(ProblemParams(d, c, m), 8):
                    worst = max(worst, hankel_eigenvalue(p).commutation_residual)
            out.append(BoundReport("hankel_commutation", worst, 1e-8, {"d": d, "c": c},
                                   rel_tol=0.0))
    return out


TRACE_CASES = ((1, 1.0), (1, 5.0), (2, 1.0), (2, 5.0), (3, 2.0))


def trace_reports(d=None, c=None, tol=1e-6, quick=False) -> list[BoundReport]:
    cases = [(d, c)] if d is not None and c is not None else TRACE_CASES
    return [trace_check(build_spectrum(dd, cc, tol)) for dd, cc in cases]


def hs_reports(d=None, c=None, tol=1e-6, quick=False) -> list[BoundReport]:
    cases = [(d, c)] if d is not None and c is not None else \
        [(dd, cc) for dd in (1, 2) for cc in (1.0, 2.0)]
    out = []
    for dd, cc in cases:
        out.extend(hs_check(build_spectrum(dd, cc, tol)))
    return out


def counting_reports(d=None, c=None, delta=None, tol=1e-6, quick=False) -> list[BoundReport]:
    deltas = DELTAS if delta is None else (delta,)
    if d is not None and c is not None:
        cases = [(d, c)]
    else:
        cases = [(1, 1.0), (1, 2.0), (2, 1.0), (2, 2.0), (2, 10.0)]
    out = []
    for dd, cc in cases:
        table = build_spectrum(dd, cc, tol)
        for de in deltas:
            reps = counting_check(table, de)
            if (dd, cc) == (2, 10.0) and de == 0.5:
                lo, hi = 21, 29
                M = reps[0].params["k"]
                reps.append(BoundReport("counting_window", abs(M - 25), 4.0,
                                        {"d": dd, "c": cc, "k": M}, rel_tol=0.0,
                                        note=f"M={M} window=[{lo}, {hi}]"))
            out.extend(reps)
    return out


def decay_reports(d=1, m=0, c=1.0, nmax=8, quick=False) -> list[BoundReport]:
    return decay_bounds_check(d, m, c, range(1, nmax + 1))


def supnorm_reports(d=None, m=None, c=None, kmax=10, quick=False) -> list[BoundReport]:
    ds = (2, 3) if d is None else (d,)
    ms = (1, 2) if m is None else (m,)
    cs = (1.0, 5.0) if c is None else (c,)
    out = []
    for dd in ds:
        for mm in ms:
            for cc in cs:
                out.extend(supnorm_bounds_check(dd, mm, cc, range(kmax + 1)))
    return out


def coeff_reports(d=2, m=None, c=5.0, kmax=2, quick=False) -> list[BoundReport]:
    ms = (0, 1) if m is None else (m,)
    out = []
    for mm in ms:
        for p in solve_prolate_family(ProblemParams(d, c, mm), kmax):
            out.extend(coeff_decay_report(p, hankel_eigenvalue(p)))
    return out


def theorem_b_reports(d=2, m=None, c=5.0, nmax=15, N=None, sigma=1.0, quick=False) -> list[BoundReport]:
    ms = (0, 1) if m is None else (m,)
    out = []
    for mm in ms:
        f = make_gaussian_test(d, mm, 1, sigma)
        orders = range(nmax + 1) if N is None else [N]
        fam = solve_prolate_family(ProblemParams(d, c, mm), max(orders))
        for n in orders:
            out.append(project_prolate(f, c, n, family=fam).as_bound())
    return out


def theorem_c_reports(d=2, m=None, c=5.0, nmax=15, N=None, sigma=1.0, quick=False) -> list[BoundReport]:
    ms = (0, 1) if m is None else (m,)
    out = []
    for mm in ms:
        f = make_gaussian_test(d, mm, 1, sigma)
        for n in (range(nmax + 1) if N is None else [N]):
            out.append(project_ballpoly(f, c, n).as_bound())
        out.extend(ineq_ball_check(f, c, 20))
    if d == 2:
        out.append(mixed_channel_check(c, sigma))
    return out


def identities_reports(quick=False, seed=0) -> list[BoundReport]:
    out = identity_suite(quick, seed)
    for d in (2, 3):
        for c in (1.0, 5.0):
            fam = solve_prolate_family(ProblemParams(d, c, 1), 1 if quick else 2)
            for p in fam:
                out.append(fourier_image_check(p, seed=seed))
    return out


FAMILIES: dict[str, Callable] = {
    "solver": lambda quick=False, **kw: solver_reports(quick),
    "galerkin": lambda quick=False, **kw: galerkin_reports(),
    "hankel": lambda quick=False, **kw: hankel_reports(quick),
    "trace": trace_reports,
    "hs": hs_reports,
    "counting": counting_reports,
    "decay": decay_reports,
    "supnorm": supnorm_reports,
    "coeff": coeff_reports,
    "theorem-b": theorem_b_reports,
    "theorem-c": theorem_c_reports,
    "identities": identities_reports,
}


def run_family(name: str, **kwargs) -> list[BoundReport]:
    if name not in FAMILIES:
        raise KeyError(f"unknown report family {name!r}")
    return FAMILIES[name](**kwargs)


def run_all(quick: bool = False, seed: int = 0) -> list[BoundReport]:
    out = []
    for name in FAMILIES:
        kw = {"quick": quick}
        if name == "identities":
            kw["seed"] = seed
        out.extend(run_family(name, **kw))
    return out

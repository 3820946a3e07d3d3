"""The thirteen acceptance criteria, each at its stated tolerance and time budget.

Every test records a one-line PASS/FAIL verdict (shown in the terminal
summary) before asserting, so a failing criterion still reports its numbers.
"""

import csv
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from ballprolate.ballpoly import ball_poly_operator_eigenvalue
from ballprolate.prolate import ProblemParams, build_radial_matrix, solve_prolate_family
from ballprolate.spectra import build_spectrum, counting_check, hs_check, trace_value
from ballprolate.suite import (GALERKIN_CASES, coeff_reports, decay_reports, hankel_reports,
                               identities_reports, supnorm_reports, theorem_b_reports,
                               theorem_c_reports)

DATA = Path(__file__).parent / "data"


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _gated_failures(reports):
    return [r for r in reports if r.condition_met and r.gating and not r.passed]


def test_criterion_01_small_c_degeneration(record_criterion):
    with Timer() as t:
        chi_err = vec_err = 0.0
        for d in (1, 2, 3):
            for m in range(4):
                for p in solve_prolate_family(ProblemParams(d, 1e-8, m), 10):
                    chi_err = max(chi_err, abs(p.chi - ball_poly_operator_eigenvalue(p.k, m, d)))
                    e = np.zeros(p.coeffs.size)
                    e[p.k] = 1.0
                    vec_err = max(vec_err, float(np.max(np.abs(p.coeffs - e))))
    ok = chi_err <= 1e-8 and vec_err <= 1e-8 and t.elapsed < 10
    record_criterion(1, ok, f"max|chi-chi0|={chi_err:.3g} max|coeffs-e_k|={vec_err:.3g} "
                            f"time={t.elapsed:.2f}s")
    assert ok


def test_criterion_02_chi_sandwich(record_criterion):
    with Timer() as t:
        worst = -math.inf
        for c in (1.0, 5.0, 10.0):
            for d in (1, 2, 3):
                for m in range(4):
                    for p in solve_prolate_family(ProblemParams(d, c, m), 10):
                        chi0 = ball_poly_operator_eigenvalue(p.k, m, d)
                        # positive means a violation beyond the tolerance
                        worst = max(worst, (chi0 - p.chi) - 1e-10 * c * c,
                                    (p.chi - chi0 - c * c) - 1e-10 * c * c)
    ok = worst <= 0 and t.elapsed < 30
    record_criterion(2, ok, f"largest excess over tolerance={worst:.3g} time={t.elapsed:.2f}s")
    assert ok


def test_criterion_03_galerkin_oracle(record_criterion):
    # extended-precision weak-form quadrature, frozen by make_galerkin_reference.py
    with Timer() as t:
        ref = {}
        off_band = {}
        with (DATA / "galerkin_reference.csv").open() as fh:
            for r in csv.DictReader(fh):
                b = float(r["beta"])
                if int(r["j"]) < 0:
                    off_band[b] = float(r["value"])
                else:
                    ref[(b, int(r["j"]), int(r["k"]))] = float(r["value"])
        worst = 0.0
        betas = []
        for d, m in GALERKIN_CASES:
            pr = ProblemParams(d, 5.0, m)
            betas.append(pr.beta)
            op = build_radial_matrix(pr, 40)
            A = op.dense()
            for j in range(40):
                for k in (j, j + 1):
                    if k < 40:
                        worst = max(worst, abs(A[j, k] - ref[(pr.beta, j, k)]))
            worst = max(worst, off_band[pr.beta])
    ok = sorted(betas) == [0.0, 0.5, 1.0, 2.5, 5.0] and worst <= 1e-11 and t.elapsed < 5
    record_criterion(3, ok, f"max abs entry difference={worst:.3g} (K=40, c=5) "
                            f"time={t.elapsed:.2f}s")
    assert ok


def test_criterion_04_hankel_commutation(record_criterion):
    with Timer() as t:
        reps = hankel_reports()
    worst = max(r.lhs for r in reps)
    ok = worst <= 1e-8 and len(reps) == 6 and t.elapsed < 60
    record_criterion(4, ok, f"max relative residual={worst:.3g} time={t.elapsed:.2f}s")
    assert ok


def test_criterion_05_trace(record_criterion):
    tail_tol = 1e-6
    with Timer() as t:
        errs = {}
        for d, c in ((1, 1.0), (1, 5.0), (2, 1.0), (2, 5.0), (3, 2.0)):
            table = build_spectrum(d, c, tail_tol)
            errs[(d, c)] = abs(table.trace - trace_value(d, c))
        example = build_spectrum(2, 1.0, tail_tol).trace
    worst = max(errs.values())
    ok = worst <= 10 * tail_tol and abs(example - 0.25) <= 10 * tail_tol and t.elapsed < 300
    record_criterion(5, ok, f"max|sum-trace|={worst:.3g} d=2,c=1 sum={example:.10f} "
                            f"time={t.elapsed:.1f}s")
    assert ok


def test_criterion_06_hs_and_landau(record_criterion):
    with Timer() as t:
        hs_err, bad = 0.0, []
        for d in (1, 2):
            for c in (1.0, 2.0):
                table = build_spectrum(d, c)
                hs_err = max(hs_err, hs_check(table)[0].lhs)
                for delta in (0.1, 0.5, 0.9):
                    bad += [r for r in counting_check(table, delta)
                            if r.gating and not r.passed]
    ok = hs_err <= 1e-6 and not bad and t.elapsed < 300
    record_criterion(6, ok, f"max HS identity error={hs_err:.3g} landau violations={len(bad)} "
                            f"time={t.elapsed:.1f}s")
    assert ok


def test_criterion_07_counting(record_criterion):
    with Timer() as t:
        M = build_spectrum(2, 10.0).count_at_least(0.5)
    ok = 21 <= M <= 29 and t.elapsed < 600
    record_criterion(7, ok, f"M_10(0.5)={M} window=[21, 29] time={t.elapsed:.1f}s")
    assert ok


def test_criterion_08_decay(record_criterion):
    with Timer() as t:
        reps = decay_reports(d=1, m=0, c=1.0, nmax=8)
    lower = [r for r in reps if r.name == "decay_lower" and r.condition_met]
    lower_bad = [r for r in lower if not r.passed]
    slope_rep = next(r for r in reps if r.name == "decay_upper_slope")
    slope = float(slope_rep.note.split("=")[1])
    ok = not lower_bad and -1.1 <= slope <= -0.9 and t.elapsed < 30
    worst = max((r.lhs / r.rhs for r in lower), default=0.0)
    record_criterion(8, ok, f"lower-bound violations={len(lower_bad)}/{len(lower)} "
                            f"(worst bound/nu={worst:.3g}) slope={slope:.4f} "
                            f"time={t.elapsed:.2f}s")
    assert ok


def test_criterion_09_supnorm(record_criterion):
    with Timer() as t:
        reps = supnorm_reports(kmax=10)
    bad = _gated_failures(reps)
    gated = [r for r in reps if r.condition_met and r.gating]
    thm_a = [r for r in reps if r.name == "theorem_A" and r.condition_met]
    ok = not bad and gated and t.elapsed < 60
    record_criterion(9, ok, f"gated checks={len(gated)} failures={len(bad)} theorem_A "
                            f"(non-gating) passed {sum(r.passed for r in thm_a)}/{len(thm_a)} "
                            f"time={t.elapsed:.2f}s")
    assert ok


def test_criterion_10_coefficient_decay(record_criterion):
    c = 5.0
    jmin = math.ceil(math.e * c / 2)
    with Timer() as t:
        reps = [r for r in coeff_reports(d=2, c=c, kmax=2) if r.params["j"] >= jmin]
    bad = [r for r in reps if not r.passed]
    ok = reps and not bad and t.elapsed < 30
    record_criterion(10, ok, f"bounds checked={len(reps)} failures={len(bad)} "
                             f"time={t.elapsed:.2f}s")
    assert ok


def test_criterion_11_identities(record_criterion):
    with Timer() as t:
        reps = identities_reports()
    bad = [r for r in reps if not r.ok]
    ok = not bad and t.elapsed < 120
    record_criterion(11, ok, f"identity/inequality reports={len(reps)} failures={len(bad)} "
                             f"time={t.elapsed:.1f}s")
    assert ok


def test_criterion_12_projection_theorems(record_criterion):
    with Timer() as t:
        reps = theorem_b_reports(d=2, c=5.0) + theorem_c_reports(d=2, c=5.0)
    counts = {}
    for name in ("theorem_B", "theorem_C", "ineq_ball"):
        sel = [r for r in reps if r.name == name and r.condition_met]
        counts[name] = (sum(r.passed for r in sel), len(sel))
    bad = _gated_failures(reps)
    ok = not bad and all(n > 0 for _, n in counts.values()) and t.elapsed < 300
    detail = " ".join(f"{k}={p}/{n}" for k, (p, n) in counts.items())
    record_criterion(12, ok, f"{detail} failures={len(bad)} time={t.elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_criterion_13_verify_all_quick(record_criterion):
    with Timer() as t:
        proc = subprocess.run([sys.executable, "-m", "ballprolate", "verify", "all", "--quick"],
                              capture_output=True, text=True, timeout=1200)
    summary = next((ln for ln in proc.stderr.splitlines() if ln.startswith("summary:")), "")
    ok = proc.returncode == 0 and t.elapsed < 1200
    record_criterion(13, ok, f"exit={proc.returncode} {summary} wall={t.elapsed:.1f}s")
    assert ok

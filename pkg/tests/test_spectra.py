import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import integrate

from ballprolate.prolate import ProblemParams, solve_prolate_family
from ballprolate.spectra import (boundary_threshold, build_spectrum, counting_check,
                                 decay_bounds_check, decay_exponent, hs_asymptote, hs_check,
                                 hs_integral, hs_trend, lens_volume, local_maxima_structure,
                                 loglog_slope, supnorm_bounds_check, supnorm_reports,
                                 theorem_a_condition, theorem_max_condition, trace_check,
                                 trace_value)


@pytest.fixture(scope="module")
def d1c1():
    return build_spectrum(1, 1.0)


def test_small_spectrum_shape(d1c1):
    assert len(d1c1.entries) >= 5
    nus = [e.nu_Q for e in d1c1.entries]
    assert all(a > b for a, b in zip(nus, nus[1:]))
    chis = [e.chi for e in d1c1.entries]
    assert all(a < b for a, b in zip(chis, chis[1:]))
    assert d1c1.rows()[0]["m"] == 0


def test_trace_value_closed_forms():
    assert trace_value(1, 1.0) == pytest.approx(2 / math.pi)
    assert trace_value(2, 3.0) == pytest.approx(9 / 4)


@pytest.mark.parametrize("d,c", [(1, 1.0), (1, 5.0), (2, 1.0), (2, 5.0), (3, 2.0)])
def test_trace(d, c):
    rep = trace_check(build_spectrum(d, c))
    assert rep.passed, rep.note


def test_tighter_tolerance_keeps_more_terms():
    loose, tight = build_spectrum(2, 3.0, 1e-4), build_spectrum(2, 3.0, 1e-9)
    assert len(tight.entries) >= len(loose.entries)
    assert abs(tight.trace - trace_value(2, 3.0)) < 1e-9 + 1e-8
    assert tight.tail_estimate < 1e-9


def test_hs_brute_force_d1():
    c = 2.0
    ref = integrate.quad(lambda t: 2 * (2 - t) * (math.sin(c * t) / (math.pi * t)) ** 2
                         if t > 0 else 2 * 2 * (c / math.pi) ** 2, 0, 2, limit=200,
                         epsabs=1e-14)[0]
    assert hs_integral(1, c) == pytest.approx(ref, rel=1e-12)
    assert build_spectrum(1, c).hs_norm_sq == pytest.approx(ref, rel=1e-9)


def test_lens_volume_endpoints():
    for d in (1, 2, 3):
        assert lens_volume(d, 0.0) == pytest.approx(math.pi ** (d / 2) / math.gamma(d / 2 + 1))
        assert lens_volume(d, 2.0) == pytest.approx(0.0, abs=1e-15)
    assert lens_volume(2, 1.0) == pytest.approx(2 * math.pi / 3 - math.sqrt(3) / 2)


@pytest.mark.parametrize("d,c", [(1, 1.0), (1, 2.0), (2, 1.0), (2, 2.0)])
def test_hs_identity(d, c):
    reps = hs_check(build_spectrum(d, c))
    assert reps[0].name == "hs_identity" and reps[0].passed
    assert reps[1].gating is False


def test_hs_ratio_approaches_one():
    rows = hs_trend(1, [2.0, 5.0, 10.0, 20.0])
    ratios = [r["hs_ratio"] for r in rows]
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)
    assert hs_asymptote(1, 1.0) == pytest.approx(1 / math.gamma(1.5) / 2)


def test_loglog_slope():
    xs = np.array([1.0, 2.0, 4.0, 8.0])
    assert loglog_slope(xs, 3 * xs ** 2) == pytest.approx(2.0)


@pytest.mark.parametrize("delta", [0.1, 0.5, 0.9])
def test_landau_brackets(delta):
    for d, c in ((1, 2.0), (2, 2.0)):
        reps = counting_check(build_spectrum(d, c), delta)
        gated = [r for r in reps if r.gating]
        assert {r.name for r in gated} == {"landau_inf", "landau_sup"}
        assert all(r.passed for r in gated)


def test_counting_window_d2_c10():
    table = build_spectrum(2, 10.0)
    M = table.count_at_least(0.5)
    assert 21 <= M <= 29
    with pytest.raises(ValueError):
        counting_check(table, 1.0)


def test_decay_gating_and_lower_bound_direction():
    reps = decay_bounds_check(1, 0, 1.0, range(1, 9))
    lower = [r for r in reps if r.name == "decay_lower"]
    assert [r.condition_met for r in lower] == [n >= math.e / 4 for n in range(1, 9)]
    for r in lower:
        assert r.rhs > 0 and r.lhs > 0
    assert decay_exponent(2, 1, 3) == 13


def test_decay_uses_supplied_spectrum():
    fam = solve_prolate_family(ProblemParams(1, 1.0, 0), 6)
    fake = {p.k: 0.5 ** p.k for p in fam}
    reps = decay_bounds_check(1, 0, 1.0, range(1, 7), spectra=fake)
    assert reps[0].rhs == 0.5


def test_supnorm_skipped_when_beta_not_positive():
    p = solve_prolate_family(ProblemParams(2, 1.0, 0), 0)[0]
    reps = supnorm_reports(p)
    assert all(not r.condition_met for r in reps)
    assert all(r.ok for r in reps)


@pytest.mark.parametrize("d,m,c", [(2, 1, 1.0), (2, 2, 5.0), (3, 1, 5.0), (3, 2, 1.0)])
def test_supnorm_bounds(d, m, c):
    reps = supnorm_bounds_check(d, m, c, range(11))
    assert all(r.ok for r in reps)
    assert any(r.condition_met for r in reps if r.name == "theorem_max")


def test_boundary_threshold():
    assert boundary_threshold(1, 2) == pytest.approx(0.5)


@settings(max_examples=200, deadline=None)
@given(d=st.integers(1, 6), m=st.integers(0, 6), c=st.floats(0.1, 20.0),
       a=st.floats(0.0, 2000.0))
def test_theorem_conditions_equivalent(d, m, c, a):
    beta = m + d / 2 - 1
    assume(beta > 0)
    chi = 4 * a + m * (m + d)
    # stay away from the common threshold, where rounding decides
    t1 = (c * c + 8) / (4 * (2 * m + d))
    t2 = (2 / 3) ** 6 * (math.pi / beta) ** 2 + c * c / 4 + (m + d / 2) * beta - 1
    assume(abs(a - max(t1, t2)) > 1e-9 * max(1.0, a))
    assert theorem_max_condition(a, m, d, c) == theorem_a_condition(chi, m, d, c)


def test_local_maxima_structure_reports_turn():
    p = solve_prolate_family(ProblemParams(2, 5.0, 1), 5)[5]
    s = local_maxima_structure(p)
    assert s["values"].size >= 3
    assert 0 <= s["turn"] < s["values"].size


def test_invalid_bandwidth():
    with pytest.raises(ValueError):
        build_spectrum(2, 25.0)
    with pytest.raises(ValueError):
        build_spectrum(2, 0.0)

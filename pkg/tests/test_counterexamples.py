"""Sharpness witnesses and the divergence-rate probe."""

import csv
import math

import numpy as np
import pytest

from fraclab.counterexamples import (
    CASE_IDS,
    CounterexampleSpec,
    RegimeError,
    divergence_probe,
    input_norm,
    make_counterexample,
    write_probe_csv,
)
from fraclab.funcspace import INF, lp_norm

EPS = np.geomspace(1e-3, 1e-7, 9)

ALL_SPECS = [
    CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0),
    CounterexampleSpec("bounded_super_inf", 2.0, 0.25, INF),
    CounterexampleSpec("halfline_sub", 2.0, 0.25, 1.0),
    CounterexampleSpec("halfline_super", 2.0, 0.25, 8.0),
    CounterexampleSpec("halfline_super", 2.0, 0.25, INF),
    CounterexampleSpec("p1_critical_log", 1.0, 0.5, 2.0),
    CounterexampleSpec("p1_halfline_low", 1.0, 0.5, 1.5),
    CounterexampleSpec("p1_halfline_high", 1.0, 0.5, 3.0),
    CounterexampleSpec("p1_halfline_inf", 1.0, 0.5, INF),
]


class TestSpecValidation:
    def test_all_cases_enumerated(self):
        assert len(CASE_IDS) == 8

    def test_default_is_midpoint(self):
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0)
        lo, hi = spec.beta_interval()
        assert (lo, hi) == pytest.approx((0.375, 0.5))
        assert spec.beta_eta == pytest.approx(0.4375)

    def test_override_inside_interval(self):
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0,
                                  beta_eta=0.45)
        assert spec.beta_eta == 0.45

    def test_override_outside_interval_names_bounds(self):
        with pytest.raises(ValueError, match=r"\(0.375, 0.5\)"):
            CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0,
                               beta_eta=0.6)

    def test_eta_regime_enforced(self):
        with pytest.raises(ValueError):
            # eta below the critical exponent 4 is not a bounded-interval case
            CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 3.0)
        with pytest.raises(ValueError):
            CounterexampleSpec("halfline_sub", 2.0, 0.25, 8.0)
        with pytest.raises(ValueError):
            CounterexampleSpec("p1_critical_log", 1.0, 0.5, 3.0)

    def test_p1_cases_require_p_one(self):
        with pytest.raises(ValueError):
            CounterexampleSpec("p1_halfline_inf", 2.0, 0.25, INF)

    def test_unknown_case(self):
        with pytest.raises(ValueError):
            CounterexampleSpec("nonsense", 2.0, 0.25, 8.0)

    def test_halfline_sub_example_interval(self):
        spec = CounterexampleSpec("halfline_sub", 2.0, 0.25, 1.0)
        assert spec.beta_interval() == pytest.approx((0.5, 1.0))


class TestMakeCounterexample:
    @pytest.mark.parametrize("spec", ALL_SPECS,
                             ids=lambda s: f"{s.case_id}-eta{s.eta}")
    def test_input_norm_finite(self, spec):
        f = make_counterexample(spec)
        norm = input_norm(spec, f)
        assert math.isfinite(norm) and norm > 0.0

    def test_bounded_case_shape(self):
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0)
        f = make_counterexample(spec)
        assert f.support == (0.0, 1.0)
        assert f.magnitude(0.25) == pytest.approx(0.25 ** -0.4375)

    def test_halfline_cases_vanish_on_first_unit(self):
        for cid, p, eta in (("halfline_sub", 2.0, 1.0),
                            ("p1_halfline_low", 1.0, 1.5)):
            alpha = 0.25 if p == 2.0 else 0.5
            f = make_counterexample(CounterexampleSpec(cid, p, alpha, eta))
            assert f.magnitude(0.5) == 0.0
            assert f.magnitude(1.5) > 0.0

    def test_log_family_l1_closed_form(self):
        spec = CounterexampleSpec("p1_critical_log", 1.0, 0.5, 2.0)
        f = make_counterexample(spec)
        b = spec.beta_eta
        exact = 2.0 * math.log(2.0) ** (1.0 - b) / (b - 1.0)
        assert lp_norm(f, 1.0) == pytest.approx(exact, rel=1e-10)


class TestDivergenceProbe:
    def test_power_origin_slope(self):
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0,
                                  beta_eta=0.4375)
        probe = divergence_probe(make_counterexample(spec), 0.25, 8.0, EPS)
        assert probe.route == "power_origin"
        assert probe.theoretical_exponent == pytest.approx(-0.5)
        assert probe.fitted_slope == pytest.approx(-0.5, abs=0.05)

    def test_sup_case_slope(self):
        spec = CounterexampleSpec("bounded_super_inf", 2.0, 0.25, INF)
        probe = divergence_probe(make_counterexample(spec), 0.25, INF, EPS)
        expected = 0.25 - spec.beta_eta
        assert probe.fitted_slope == pytest.approx(expected, rel=1e-9)

    def test_near_critical_slope_goes_flat(self):
        # beta just above the lower end of the admissible interval makes
        # the divergence nearly logarithmic: slope close to 0 but N rising
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0,
                                  beta_eta=0.3775)
        probe = divergence_probe(make_counterexample(spec), 0.25, 8.0, EPS)
        assert probe.theoretical_exponent == pytest.approx(-0.02, abs=1e-12)
        # the finite-eps fit overshoots the tiny exponent, but stays mild
        assert -0.25 < probe.fitted_slope < 0.0
        assert np.all(np.diff(probe.truncated_norm_power) > 0.0)

    def test_halfline_growth_matches_theory(self):
        spec = CounterexampleSpec("halfline_sub", 2.0, 0.25, 1.0)
        probe = divergence_probe(make_counterexample(spec), 0.25, 1.0,
                                 np.geomspace(1e-2, 1e-5, 8))
        assert probe.route == "halfline_growth"
        assert probe.fitted_slope == pytest.approx(probe.theoretical_exponent,
                                                   rel=0.10)
        assert probe.theoretical_exponent < 0.0

    def test_log_family_monotone_no_plateau(self):
        spec = CounterexampleSpec("p1_critical_log", 1.0, 0.5, 2.0)
        probe = divergence_probe(make_counterexample(spec), 0.5, 2.0, EPS)
        assert probe.route == "log_tail"
        n = probe.truncated_norm_power
        assert np.all(n[1:] / n[:-1] > 1.001)
        assert probe.theoretical_exponent == pytest.approx(0.0, abs=1e-12)

    def test_every_case_diverges(self):
        # qualitative sweep: each witness has a blowing-up truncated norm;
        # quantitative slope agreement is checked per route above
        for spec in ALL_SPECS:
            probe = divergence_probe(make_counterexample(spec), spec.alpha,
                                     spec.eta, np.geomspace(1e-3, 1e-6, 7))
            assert probe.theoretical_exponent <= 1e-12
            assert probe.fitted_slope < 0.0
            assert np.all(np.diff(probe.truncated_norm_power) > 0.0)

    def test_convergent_setup_rejected(self):
        # a mild power whose image stays in L^2 must be refused
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0)
        f = make_counterexample(spec)
        with pytest.raises(RegimeError):
            divergence_probe(f, 0.25, 2.0, EPS)

    def test_schedule_validation(self):
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0)
        f = make_counterexample(spec)
        with pytest.raises(ValueError):
            divergence_probe(f, 0.25, 8.0, np.array([1e-3, 1e-2]))

    def test_csv_output(self, tmp_path):
        spec = CounterexampleSpec("bounded_super_finite", 2.0, 0.25, 8.0)
        probe = divergence_probe(make_counterexample(spec), 0.25, 8.0, EPS)
        path = tmp_path / "probe.csv"
        write_probe_csv(probe, path)
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == EPS.size
        assert set(rows[0]) == {"eps", "truncated_norm_power", "log_eps",
                                "log_N", "fitted_slope", "theoretical_exponent"}
        assert float(rows[0]["eps"]) == pytest.approx(1e-3)
        assert float(rows[0]["fitted_slope"]) == pytest.approx(probe.fitted_slope)

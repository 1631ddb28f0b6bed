"""Explicit constants and the inequality verification harness."""

import json
import math

import numpy as np
import pytest

from fraclab.bounds import (
    InterpolationChoice,
    RegimeError,
    marcinkiewicz_constant,
    strong_type_constant,
    verify_into_itself,
    verify_strong_type,
    verify_weak_type,
    weak_type_constant,
)
from fraclab.fracint import rl_integral_grid
from fraclab.funcspace import GridFunction, lp_norm, random_piecewise_linear, weak_lp_quasinorm
from fraclab.special import gamma


def _const_one(n=257):
    t = np.linspace(0.0, 1.0, n)
    return GridFunction(t, np.ones((n, 1)))


class TestWeakTypeConstant:
    def test_reference_values(self):
        assert weak_type_constant(0.25, 2.0) == pytest.approx(1.3120, abs=1e-3)
        exact_p1 = 2.0 / (0.5 ** 0.5 * gamma(0.5))
        assert weak_type_constant(0.5, 1.0) == pytest.approx(exact_p1, rel=1e-12)
        assert weak_type_constant(0.5, 1.0) == pytest.approx(1.5958, abs=1e-3)

    def test_formula_p_above_one(self):
        # direct log-free evaluation cross-check
        alpha, p = 0.3, 1.7
        e = alpha * (p - 1.0)
        direct = (2.0 * (p - 1.0) ** e
                  / (alpha ** (1.0 - p * alpha) * gamma(alpha)
                     * (1.0 - alpha * p) ** e))
        assert weak_type_constant(alpha, p) == pytest.approx(direct, rel=1e-12)

    def test_small_alpha_limit(self):
        # alpha^(1-p*alpha) * Gamma(alpha) -> 1 as alpha -> 0, so K -> 2
        # monotonically from below for p = 2
        vals = [weak_type_constant(10.0 ** -k, 2.0) for k in range(1, 8)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(2.0, abs=1e-4)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            weak_type_constant(0.5, 2.0)
        with pytest.raises(ValueError):
            weak_type_constant(0.25, 0.5)

    def test_continuity_grid(self):
        # symmetric difference quotients stay bounded away from alpha = 1/p
        h = 1e-6
        for alpha in (0.1, 0.2, 0.3):
            for p in (1.5, 2.0, 2.5):
                da = (weak_type_constant(alpha + h, p)
                      - weak_type_constant(alpha - h, p)) / (2 * h)
                dp = (weak_type_constant(alpha, p + h)
                      - weak_type_constant(alpha, p - h)) / (2 * h)
                assert abs(da) < 1e3 and abs(dp) < 1e3


class TestInterpolationChoice:
    def test_reference_pair(self):
        ch = InterpolationChoice(0.25, 2.0, 1.5, 3.0)
        assert ch.q1 == pytest.approx(2.4, rel=1e-12)
        assert ch.q2 == pytest.approx(12.0, rel=1e-12)
        assert ch.theta == pytest.approx(0.5, rel=1e-12)
        assert ch.q_theta == pytest.approx(4.0, rel=1e-12)

    def test_identity_invariant(self):
        ch = InterpolationChoice(0.25, 2.0, 1.2, 3.7)
        lhs = (1.0 - ch.theta) / ch.p1 + ch.theta / ch.p2
        assert lhs == pytest.approx(1.0 / ch.p, abs=1e-12)
        assert 0.0 < ch.theta < 1.0

    def test_rejects_bad_ordering(self):
        with pytest.raises(ValueError):
            InterpolationChoice(0.25, 2.0, 2.5, 3.0)
        with pytest.raises(ValueError):
            InterpolationChoice(0.25, 2.0, 1.5, 4.5)


class TestMarcinkiewicz:
    def test_hand_computed_chain(self):
        ch = InterpolationChoice(0.25, 2.0, 1.5, 3.0)
        n1 = weak_type_constant(0.25, 1.5)
        n2 = weak_type_constant(0.25, 3.0)
        assert n1 == pytest.approx(1.27591, abs=1e-4)
        assert n2 == pytest.approx(2.20644, abs=1e-4)
        assert marcinkiewicz_constant(ch, n1, n2) == pytest.approx(4.778, abs=1e-2)

    def test_geometric_mean_of_ones(self):
        ch = InterpolationChoice(0.25, 2.0, 1.5, 3.0)
        k = marcinkiewicz_constant(ch, 1.0, 1.0)
        got = marcinkiewicz_constant(ch, 2.0, 2.0)
        assert got == pytest.approx(2.0 * k, rel=1e-12)

    def test_rejects_nonpositive_norms(self):
        ch = InterpolationChoice(0.25, 2.0, 1.5, 3.0)
        with pytest.raises(ValueError):
            marcinkiewicz_constant(ch, 0.0, 1.0)


class TestStrongTypeConstant:
    def test_below_feasible_sample(self):
        value, choice = strong_type_constant(0.25, 2.0, 32)
        assert value <= 4.778 + 1e-9
        assert 1.0 < choice.p1 < 2.0 < choice.p2 < 4.0

    def test_refining_nested_grid_never_increases(self):
        # grid points are i/(g+1), so g = 7 refines into g = 15
        coarse, _ = strong_type_constant(0.25, 2.0, 7)
        fine, _ = strong_type_constant(0.25, 2.0, 15)
        assert fine <= coarse + 1e-12

    def test_dominates_empirical_ratio(self):
        value, _ = strong_type_constant(0.25, 2.0, 16)
        q = 4.0
        worst = 0.0
        for seed in range(50):
            f = random_piecewise_linear(seed, n=129)
            num = lp_norm(rl_integral_grid(f, 0.25), q)
            den = lp_norm(f, 2.0)
            worst = max(worst, num / den)
        assert worst <= value

    def test_degenerate_region(self):
        with pytest.raises(ValueError):
            strong_type_constant(0.25, 1.0)


class TestVerifyHarness:
    def test_into_itself_constant_function(self):
        rep = verify_into_itself(_const_one(), 0.25, 2.0)
        assert rep.holds
        assert rep.constant_used == pytest.approx(1.0 / gamma(1.25), rel=1e-12)

    def test_weak_type_constant_function(self):
        rep = verify_weak_type(_const_one(), 0.25, 2.0)
        assert rep.holds
        assert rep.rhs == pytest.approx(weak_type_constant(0.25, 2.0), rel=1e-6)

    def test_weak_type_zero_function(self):
        t = np.linspace(0.0, 1.0, 65)
        rep = verify_weak_type(GridFunction(t, np.zeros((65, 1))), 0.25, 2.0)
        assert rep.holds and rep.lhs == 0.0

    def test_strong_type_critical_reference(self):
        # f = 1 on [0,1]: ||J^0.25 f||_4 = (1/2)^(1/4)/Gamma(1.25)
        rep = verify_strong_type(_const_one(1025), 0.25, 2.0, 4.0)
        assert rep.holds
        assert rep.lhs == pytest.approx(0.5 ** 0.25 / gamma(1.25), rel=1e-4)
        assert rep.context["base_constant"] <= 4.778

    def test_strong_type_p1_subcritical(self):
        rep = verify_strong_type(_const_one(1025), 0.5, 1.0, 1.5)
        assert rep.holds
        k1 = weak_type_constant(0.5, 1.0)
        assert rep.constant_used == pytest.approx(k1 * (1.0 / 0.25) ** (1 / 1.5),
                                                  rel=1e-12)

    def test_strong_type_supercritical_rejected(self):
        with pytest.raises(RegimeError):
            verify_strong_type(_const_one(), 0.25, 2.0, 5.0)

    def test_strong_type_p1_critical_rejected(self):
        with pytest.raises(RegimeError):
            verify_strong_type(_const_one(), 0.5, 1.0, 2.0)

    def test_report_json_round_trip(self):
        rep = verify_weak_type(_const_one(), 0.25, 2.0, seed=42)
        data = json.loads(rep.to_json())
        assert data["seed"] == 42
        assert data["holds"] is True
        assert data["slack"] == pytest.approx(rep.rhs - rep.lhs)

    @pytest.mark.parametrize("alpha,p", [(0.25, 2.0), (0.3, 1.0), (0.2, 3.0)])
    def test_weak_sweep(self, alpha, p):
        for seed in range(60):
            f = random_piecewise_linear(seed, n=129)
            assert verify_weak_type(f, alpha, p, seed=seed).holds

    @pytest.mark.parametrize("alpha,p", [(0.3, 2.0), (0.7, 2.0), (0.5, 4.0)])
    def test_into_itself_sweep(self, alpha, p):
        for seed in range(60):
            f = random_piecewise_linear(seed, n=129, d=2)
            assert verify_into_itself(f, alpha, p, seed=seed).holds

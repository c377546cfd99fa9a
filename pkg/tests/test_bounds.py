import math

import pytest
from hypothesis import given, settings

from conftest import obs_with_params, observed_joints
from counterbound.bounds import (
    Target,
    ate_sensitivity_bounds,
    cf_intervals,
    informative_regions,
    obs_bounds,
    pn_ps_bounds,
    sensitivity_bounds,
    tian_pearl_bounds,
)
from counterbound.model import (
    EmptyInterval,
    Interval,
    ObservedJoint,
    ParamsOutsidePossibleRegion,
    SensitivityParams,
    ZeroConditioningEvent,
)


def outward_round(value: float, up: bool, digits: int = 2) -> float:
    scale = 10 ** digits
    f = math.ceil if up else math.floor
    return f(value * scale - (1e-9 if up else -1e-9)) / scale


class TestObsBounds:
    def test_case_study(self, case_obs):
        b = obs_bounds(case_obs, Target.BENEFIT)
        h = obs_bounds(case_obs, Target.HARM)
        assert (b.interval.lo, b.interval.hi) == (0.0, pytest.approx(0.784, abs=1e-12))
        assert (h.interval.lo, h.interval.hi) == (0.0, pytest.approx(0.216, abs=1e-12))
        # published presentation rounds bound endpoints outward
        assert outward_round(b.interval.hi, up=True) == pytest.approx(0.79)
        assert outward_round(h.interval.hi, up=True) == pytest.approx(0.22)

    def test_point_mass(self):
        obs = ObservedJoint(1.0, 0.0, 0.0, 0.0)
        b = obs_bounds(obs)
        assert (b.interval.lo, b.interval.hi) == (0.0, 1.0)


class TestTianPearl:
    def test_point_truths(self, case_obs):
        p_yx, p_yxp = Interval.point(0.42), Interval.point(0.12)
        b = tian_pearl_bounds(case_obs, p_yx, p_yxp, Target.BENEFIT)
        assert b.interval.lo == pytest.approx(0.30, abs=1e-12)
        assert b.interval.hi == pytest.approx(0.42, abs=1e-12)
        assert b.lower_active == ("lb2",)
        assert b.upper_active == ("ub1",)
        h = tian_pearl_bounds(case_obs, p_yx, p_yxp, Target.HARM)
        assert h.interval.lo == pytest.approx(0.0, abs=1e-12)
        assert h.interval.hi == pytest.approx(0.12, abs=1e-12)

    def test_vacuous_inputs_reduce_to_obs(self, case_obs):
        vac = Interval(0.0, 1.0)
        b = tian_pearl_bounds(case_obs, vac, vac)
        env = obs_bounds(case_obs)
        assert b.interval == env.interval

    def test_inconsistent_inputs_raise(self, case_obs):
        # claiming p(y_x') = 0 while p(y_x) barely moves makes the rows cross
        with pytest.raises(EmptyInterval):
            tian_pearl_bounds(case_obs, Interval.point(0.05), Interval.point(0.9))


class TestCfIntervals:
    def test_case_study(self, case_obs, case_true_params):
        cf = cf_intervals(case_obs, case_true_params)
        assert cf.p_yx.lo == pytest.approx(0.412, abs=1e-12)
        assert cf.p_yx.hi == pytest.approx(0.564, abs=1e-12)
        assert cf.p_yxp.lo == pytest.approx(0.108, abs=1e-12)
        assert cf.p_yxp.hi == pytest.approx(0.156, abs=1e-12)

    def test_no_confounding_reading_is_a_point(self, case_obs):
        pyx = case_obs.p_y_given_x
        pyxp = case_obs.p_y_given_xp
        cf = cf_intervals(case_obs, SensitivityParams(pyx, pyx, pyxp, pyxp))
        assert cf.p_yx.lo == pytest.approx(pyx, abs=1e-12)
        assert cf.p_yx.hi == pytest.approx(pyx, abs=1e-12)
        assert cf.p_yxp.lo == pytest.approx(pyxp, abs=1e-12)

    def test_vacuous(self, case_obs):
        cf = cf_intervals(case_obs, SensitivityParams.vacuous())
        assert cf.p_yx.lo == pytest.approx(case_obs.pxy, abs=1e-12)
        assert cf.p_yx.hi == pytest.approx(case_obs.pxy + case_obs.p_xp, abs=1e-12)

    def test_params_outside_region(self, case_obs):
        with pytest.raises(ParamsOutsidePossibleRegion):
            cf_intervals(case_obs, SensitivityParams(0.5, 0.6, 0.1, 0.3))


class TestSensitivityBounds:
    def test_case_study_benefit_and_harm(self, case_obs, case_true_params):
        b = sensitivity_bounds(case_obs, case_true_params, Target.BENEFIT)
        assert b.interval.lo == pytest.approx(0.256, abs=1e-12)
        assert b.interval.hi == pytest.approx(0.564, abs=1e-12)
        h = sensitivity_bounds(case_obs, case_true_params, Target.HARM)
        assert h.interval.lo == pytest.approx(0.0, abs=1e-12)
        assert h.interval.hi == pytest.approx(0.156, abs=1e-12)

    def test_vacuous_params_collapse_to_obs(self, case_obs):
        b = sensitivity_bounds(case_obs, SensitivityParams.vacuous())
        env = obs_bounds(case_obs)
        assert b.interval == env.interval
        assert "ub3" in b.upper_active

    @given(pair=obs_with_params())
    @settings(max_examples=300)
    def test_agrees_with_propagation_route(self, pair):
        obs, params = pair
        for target in (Target.BENEFIT, Target.HARM):
            direct = sensitivity_bounds(obs, params, target)
            cf = cf_intervals(obs, params)
            via = tian_pearl_bounds(obs, cf.p_yx, cf.p_yxp, target)
            assert direct.interval.lo == pytest.approx(via.interval.lo, abs=1e-12)
            assert direct.interval.hi == pytest.approx(via.interval.hi, abs=1e-12)

    @given(pair=obs_with_params())
    @settings(max_examples=300)
    def test_row_redundancies(self, pair):
        obs, params = pair
        b = sensitivity_bounds(obs, params)
        lr, ur = b.lower_rows, b.upper_rows
        assert lr["lb2"] == pytest.approx(lr["lb3"] + lr["lb4"], abs=1e-12)
        assert ur["ub4"] == pytest.approx(ur["ub1"] + ur["ub2"] - ur["ub3"], abs=1e-12)

    @given(pair=obs_with_params())
    @settings(max_examples=300)
    def test_dominates_observational(self, pair):
        obs, params = pair
        b = sensitivity_bounds(obs, params)
        env = obs_bounds(obs)
        assert b.interval.lo >= env.interval.lo - 1e-12
        assert b.interval.hi <= env.interval.hi + 1e-12

    @given(obs=observed_joints())
    @settings(max_examples=300)
    def test_upper_strictly_better_at_no_confounding_params(self, obs):
        pyx = obs.p_y_given_x
        pyxp = obs.p_y_given_xp
        b = sensitivity_bounds(obs, SensitivityParams(pyx, pyx, pyxp, pyxp))
        env_hi = obs_bounds(obs).interval.hi
        if abs(pyx - (1.0 - pyxp)) > 1e-9:
            assert b.interval.hi < env_hi - 1e-15
        else:
            assert b.interval.hi == pytest.approx(env_hi, abs=1e-12)

    def test_monotone_in_params(self, case_obs):
        # raising m_x can only raise the lower bound; raising M_x can
        # only raise the upper bound
        lo_small = sensitivity_bounds(case_obs, SensitivityParams(0.2, 0.6, 0.1, 0.3))
        lo_big = sensitivity_bounds(case_obs, SensitivityParams(0.4, 0.6, 0.1, 0.3))
        assert lo_big.interval.lo >= lo_small.interval.lo - 1e-12
        up_small = sensitivity_bounds(case_obs, SensitivityParams(0.4, 0.5, 0.1, 0.3))
        up_big = sensitivity_bounds(case_obs, SensitivityParams(0.4, 0.9, 0.1, 0.3))
        assert up_big.interval.hi >= up_small.interval.hi - 1e-12


class TestAteBounds:
    def test_case_study(self, case_obs, case_true_params):
        ate = ate_sensitivity_bounds(case_obs, case_true_params)
        assert ate.lo == pytest.approx(0.256, abs=1e-12)
        assert ate.hi == pytest.approx(0.456, abs=1e-12)
        assert ate.kind == "signed"

    def test_vacuous(self, case_obs):
        ate = ate_sensitivity_bounds(case_obs, SensitivityParams.vacuous())
        assert ate.lo == pytest.approx(case_obs.pxy - case_obs.px_y - case_obs.p_x, abs=1e-12)
        assert ate.hi == pytest.approx(case_obs.pxy + case_obs.p_xp - case_obs.px_y, abs=1e-12)

    def test_degenerate_params_give_point(self, case_obs):
        pyx = case_obs.p_y_given_x
        pyxp = case_obs.p_y_given_xp
        ate = ate_sensitivity_bounds(case_obs, SensitivityParams(pyx, pyx, pyxp, pyxp))
        assert ate.lo == pytest.approx(ate.hi, abs=1e-12)
        assert ate.lo == pytest.approx(pyx - pyxp, abs=1e-12)

    @given(pair=obs_with_params())
    @settings(max_examples=300)
    def test_matches_benefit_and_harm_rows(self, pair):
        obs, params = pair
        ate = ate_sensitivity_bounds(obs, params)
        b = sensitivity_bounds(obs, params, Target.BENEFIT)
        h = sensitivity_bounds(obs, params, Target.HARM)
        assert ate.lo == pytest.approx(b.lower_rows["lb2"], abs=1e-12)
        assert ate.hi == pytest.approx(-h.lower_rows["lb2"], abs=1e-12)


class TestInformativeRegions:
    def test_case_study_benefit(self, case_obs):
        info = informative_regions(case_obs, Target.BENEFIT)
        pyxp = 0.084 / 0.76
        assert info.m_param == "m_x" and info.M_param == "M_xp"
        assert info.lower_m_interval == (pytest.approx(pyxp, abs=1e-12),
                                         pytest.approx(0.45, abs=1e-12))
        assert info.lower_M_interval == info.lower_m_interval
        assert info.upper_strict is True
        assert info.upper_equals_possible is True

    def test_case_study_harm_is_empty(self, case_obs):
        info = informative_regions(case_obs, Target.HARM)
        # harm needs p(y|x') above p(y|x), which fails here
        assert info.lower_m_interval is None
        assert info.lower_M_interval is None

    def test_flat_conditionals_empty(self):
        obs = ObservedJoint(0.2, 0.3, 0.2, 0.3)
        info = informative_regions(obs)
        assert info.lower_m_interval is None
        assert info.upper_strict is True  # 0.4 vs 0.6

    def test_strictness_condition(self):
        # p(y|x) = 0.4 and p(y'|x') = 0.4 kill the strict improvement
        obs = ObservedJoint(0.2, 0.3, 0.3, 0.2)
        info = informative_regions(obs)
        assert info.upper_strict is False


class TestPnPs:
    def test_case_study_points(self, case_obs):
        got = pn_ps_bounds(case_obs, Interval.point(0.42), Interval.point(0.12))
        assert got.pn.lo == pytest.approx(2.0 / 3.0, abs=1e-9)
        assert got.pn.hi == pytest.approx(1.0, abs=1e-12)
        assert got.ps.lo == pytest.approx(0.228 / 0.676, abs=1e-9)
        assert got.ps.hi == pytest.approx(0.312 / 0.676, abs=1e-9)

    def test_vacuous_counterfactuals(self, case_obs):
        vac = Interval(0.0, 1.0)
        got = pn_ps_bounds(case_obs, vac, vac)
        assert (got.pn.lo, got.pn.hi) == (0.0, 1.0)
        assert (got.ps.lo, got.ps.hi) == (0.0, 1.0)

    def test_zero_conditioning_event(self):
        no_treated_recovery = ObservedJoint(0.0, 0.3, 0.2, 0.5)
        with pytest.raises(ZeroConditioningEvent):
            pn_ps_bounds(no_treated_recovery, Interval(0, 1), Interval(0, 1))

    def test_decomposition_consistent_with_benefit_bounds(self, case_obs):
        p_yx, p_yxp = Interval.point(0.42), Interval.point(0.12)
        got = pn_ps_bounds(case_obs, p_yx, p_yxp)
        tp = tian_pearl_bounds(case_obs, p_yx, p_yxp)
        lo = case_obs.pxy * got.pn.lo + case_obs.px_y_ * got.ps.lo
        hi = case_obs.pxy * got.pn.hi + case_obs.px_y_ * got.ps.hi
        # benefit = p(x,y) PN + p(x',y') PS, so the two ranges must overlap
        assert lo <= tp.interval.hi + 1e-12
        assert hi >= tp.interval.lo - 1e-12

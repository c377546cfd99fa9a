"""Report payloads shared by the command line and the HTTP service.

Every user-facing operation produces a plain dict (or CSV string) built
here, so that a CLI invocation and a service request with the same
inputs return the same payload by construction. Nothing in this module
does bound arithmetic; it only assembles results from the core modules
and validates the loosely-typed inputs those interfaces receive.
"""

from __future__ import annotations

from typing import Mapping, Optional

from .bounds import (
    Target,
    ate_sensitivity_bounds,
    cf_intervals,
    informative_regions,
    obs_bounds,
    pn_ps_bounds,
    sensitivity_bounds,
)
from .decision import (
    SocialWeights,
    compliance_region,
    social_good_naive,
    social_good_refined,
)
from .model import (
    Interval,
    ObservedJoint,
    ProxyJoint,
    SchemaError,
    SensitivityParams,
    ZeroConditioningEvent,
)
from .proxy import DEFAULT_TIE_TOLERANCE, condition_free_interval, proxy_bounds
from .study import SamplerSpec, SimResult, SweepResult, SweepSpec, simulate, sweep

BOUNDS_TARGETS = ("benefit", "harm", "both")


def interval_from_json(data, name: str, kind: str = "probability") -> Interval:
    """Parse {"lo": .., "hi": ..} (an optional "kind" is ignored)."""
    if not isinstance(data, Mapping):
        raise SchemaError(f"{name} must be an object with lo and hi")
    unknown = sorted(set(data) - {"lo", "hi", "kind"})
    if unknown:
        raise SchemaError(f"{name} has unknown field(s): {', '.join(unknown)}")
    try:
        return Interval(float(data["lo"]), float(data["hi"]), kind=kind)
    except KeyError as exc:
        raise SchemaError(f"{name} is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{name} endpoints must be numbers") from exc


def weights_from_json(data) -> SocialWeights:
    if not isinstance(data, Mapping):
        raise SchemaError("weights must be an object with w_benefit and w_harm")
    unknown = sorted(set(data) - {"w_benefit", "w_harm"})
    if unknown:
        raise SchemaError(f"weights has unknown field(s): {', '.join(unknown)}")
    try:
        return SocialWeights(float(data["w_benefit"]), float(data["w_harm"]))
    except KeyError as exc:
        raise SchemaError(f"weights is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise SchemaError("weights must be numbers") from exc


def possible_regions(obs: ObservedJoint) -> dict:
    """The admissible range of each sensitivity parameter.

    Fed to UIs so sliders can clamp before submitting; the same ranges
    gate SensitivityParams.check_against.
    """
    pyx = obs.p_y_given_x
    pyxp = obs.p_y_given_xp
    return {
        "m_x": {"lo": 0.0, "hi": pyx},
        "M_x": {"lo": pyx, "hi": 1.0},
        "m_xp": {"lo": 0.0, "hi": pyxp},
        "M_xp": {"lo": pyxp, "hi": 1.0},
    }


def bounds_report(obs: ObservedJoint,
                  params: Optional[SensitivityParams] = None,
                  target: str = "both") -> dict:
    """Everything derivable from an observed joint, optionally sharpened
    by sensitivity parameters."""
    if target not in BOUNDS_TARGETS:
        raise SchemaError(f"target must be one of {BOUNDS_TARGETS}, got {target!r}")
    wanted = ("benefit", "harm") if target == "both" else (target,)

    report: dict = {
        "observed": obs.to_json(),
        "margins": {
            "p_x": obs.p_x,
            "p_y": obs.p_y,
            "p_y_given_x": obs.p_y_given_x,
            "p_y_given_xp": obs.p_y_given_xp,
        },
        "possible_regions": possible_regions(obs),
        "envelope": {name: obs_bounds(obs, Target.parse(name)).to_json()
                     for name in wanted},
        "informative_regions": {
            name: informative_regions(obs, Target.parse(name)).to_json()
            for name in wanted},
        "params": None,
    }
    if params is None:
        return report

    cf = cf_intervals(obs, params)
    report["params"] = params.to_json()
    report["counterfactual_intervals"] = cf.to_json()
    report["sensitivity"] = {
        name: sensitivity_bounds(obs, params, Target.parse(name)).to_json()
        for name in wanted}
    report["ate"] = ate_sensitivity_bounds(obs, params).to_json()
    try:
        report["pn_ps"] = pn_ps_bounds(obs, cf.p_yx, cf.p_yxp).to_json()
    except ZeroConditioningEvent as exc:
        # Attribution is undefined for this joint; the rest of the
        # report is still meaningful, so record why instead of failing.
        report["pn_ps"] = None
        report["pn_ps_unavailable"] = str(exc)
    return report


def proxy_report(pj: ProxyJoint,
                 tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> dict:
    """Proxy-rule bounds with full dispatch traces for both targets."""
    result = proxy_bounds(pj, tie_tolerance)
    report = {"joint": pj.to_json(), "observed": pj.collapse().to_json()}
    report.update(result.to_json())
    report["condition_free"] = {
        "benefit": condition_free_interval(pj, tie_tolerance).to_json(),
        "harm": condition_free_interval(pj.swap_x(), tie_tolerance).to_json(),
    }
    return report


def sweep_report(obs: ObservedJoint,
                 target: str,
                 side: str,
                 axis1: str,
                 axis2: str,
                 fixed: Optional[Mapping[str, float]] = None,
                 resolution: int = 101) -> SweepResult:
    spec = SweepSpec(target=target, side=side, axis1=axis1, axis2=axis2,
                     fixed=dict(fixed or {}), resolution=resolution)
    return sweep(obs, spec)


def simulate_report(n: int, seed: int = 0,
                    sampler: Optional[SamplerSpec] = None) -> SimResult:
    return simulate(n, seed=seed, sampler=sampler)


def social_report(benefit: Interval, harm: Interval,
                  ate: Optional[Interval], w: SocialWeights) -> dict:
    """Social-good intervals, refined by the effect band when one is given."""
    report: dict = {
        "weights": w.to_json(),
        "benefit": benefit.to_json(),
        "harm": harm.to_json(),
        "ate": None if ate is None else ate.to_json(),
        "naive": social_good_naive(benefit, harm, w).to_json(),
        "refined": None,
        "compliance_region": None,
    }
    if ate is not None:
        refined = social_good_refined(benefit, harm, ate, w)
        report["refined"] = refined.to_json()
        report["compliance_region"] = [
            {"harm": h, "benefit": b}
            for h, b in compliance_region(benefit, harm, ate)]
    return report

"""Bounds on the probabilities of benefit and harm for binary X and Y.

The probability of benefit is p(y_x, y'_x'), the chance that treatment
causes the outcome; the probability of harm is p(y_x', y'_x), the chance
that treatment prevents it. Neither is point identified from data, so
everything here returns intervals.

Two families of bounds are implemented:

* Observational bounds, which need only the joint p(X, Y):
  0 <= p(benefit) <= p(x, y) + p(x', y').
* Tian-Pearl style bounds, which sharpen the envelope with the
  interventional probabilities p(y_x) and p(y_x'). When those are not
  known they can be replaced by intervals; in particular the sensitivity
  parameterization (m_x, M_x, m_xp, M_xp) brackets p(y | x, u) across
  the latent strata u of an unobserved confounder U, which induces

      p(y_x) in [p(x,y) + p(x') m_x,  p(x,y) + p(x') M_x]

  and the primed analogue. ``sensitivity_bounds`` writes the resulting
  benefit rows out explicitly; ``tian_pearl_bounds`` composed with
  ``cf_intervals`` must agree with it to numerical precision, and the
  test suite enforces that.

Harm is benefit with the treatment levels relabeled, so every function
takes a ``Target`` and swaps x and x' internally for ``Target.HARM``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional

from .model import (
    TOL_NUM,
    TOL_PROB,
    EmptyInterval,
    Interval,
    ObservedJoint,
    SensitivityParams,
    ZeroConditioningEvent,
)

__all__ = [
    "Target",
    "BoundResult",
    "CfIntervals",
    "InformativeRegions",
    "PnPsBounds",
    "obs_bounds",
    "tian_pearl_bounds",
    "cf_intervals",
    "sensitivity_bounds",
    "ate_sensitivity_bounds",
    "informative_regions",
    "pn_ps_bounds",
]


class Target(enum.Enum):
    """Which counterfactual probability a bound refers to."""

    BENEFIT = "benefit"
    HARM = "harm"

    @classmethod
    def parse(cls, text: str) -> "Target":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown target {text!r}, expected benefit or harm") from None


@dataclass(frozen=True)
class BoundResult:
    """An interval plus the trace of how it was attained.

    ``lower_rows``/``upper_rows`` map row identifiers to the value each
    max/min argument took; ``lower_active``/``upper_active`` list the
    rows that attained the bound (all of them, when tied within
    TOL_NUM). ``rules_fired`` is used by the proxy dispatch and stays
    empty for the plain bounds in this module.
    """

    interval: Interval
    lower_active: tuple[str, ...]
    upper_active: tuple[str, ...]
    lower_rows: Mapping[str, float]
    upper_rows: Mapping[str, float]
    rules_fired: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "lower_active": list(self.lower_active),
            "upper_active": list(self.upper_active),
            "lower_rows": dict(self.lower_rows),
            "upper_rows": dict(self.upper_rows),
            "rules_fired": list(self.rules_fired),
        }


def _active(rows: Mapping[str, float], value: float) -> tuple[str, ...]:
    return tuple(name for name, v in rows.items() if abs(v - value) <= TOL_NUM)


def _assemble(lower_rows: Mapping[str, float], upper_rows: Mapping[str, float],
              rules_fired: tuple[str, ...] = ()) -> BoundResult:
    lo = max(lower_rows.values())
    hi = min(upper_rows.values())
    if lo > hi + TOL_PROB:
        raise EmptyInterval(
            f"lower bound {lo} exceeds upper bound {hi}; inputs are inconsistent")
    interval = Interval(min(lo, hi), max(lo, hi))
    return BoundResult(
        interval=interval,
        lower_active=_active(lower_rows, lo),
        upper_active=_active(upper_rows, hi),
        lower_rows=dict(lower_rows),
        upper_rows=dict(upper_rows),
        rules_fired=rules_fired,
    )


def obs_bounds(obs: ObservedJoint, target: Target = Target.BENEFIT) -> BoundResult:
    """Bounds from the observational joint alone.

    Benefit lies in [0, p(x, y) + p(x', y')]: the upper end is the chance
    of seeing an outcome consistent with benefit at all.
    """
    if target is Target.HARM:
        obs = obs.swap_x()
    return _assemble({"lb1": 0.0}, {"ub1": obs.pxy + obs.px_y_})


def tian_pearl_bounds(obs: ObservedJoint, p_yx: Interval, p_yxp: Interval,
                      target: Target = Target.BENEFIT) -> BoundResult:
    """Bounds given intervals for the interventional probabilities.

    With p(y_x) and p(y_x') known exactly (point intervals) these are the
    tight bounds

      max{0, p(y_x)-p(y_x'), p(y)-p(y_x'), p(y_x)-p(y)}
        <= p(benefit) <=
      min{p(y_x), p(y'_x'), p(x,y)+p(x',y'), p(y_x)-p(y_x')+p(x,y')+p(x',y)}.

    Interval inputs propagate conservatively: lower-bound rows use
    p_yx.lo and p_yxp.hi, upper-bound rows use p_yx.hi and p_yxp.lo, so
    the result is valid for every admissible pair. Vacuous [0, 1] inputs
    reduce the result to ``obs_bounds``.

    Raises EmptyInterval when the supplied intervals contradict the
    observed table badly enough that the propagated lower end exceeds
    the upper end.
    """
    if target is Target.HARM:
        obs = obs.swap_x()
        p_yx, p_yxp = p_yxp, p_yx
    py = obs.p_y
    lower = {
        "lb1": 0.0,
        "lb2": p_yx.lo - p_yxp.hi,
        "lb3": py - p_yxp.hi,
        "lb4": p_yx.lo - py,
    }
    upper = {
        "ub1": p_yx.hi,
        "ub2": 1.0 - p_yxp.lo,
        "ub3": obs.pxy + obs.px_y_,
        "ub4": p_yx.hi - p_yxp.lo + obs.pxy_ + obs.px_y,
    }
    return _assemble(lower, upper)


@dataclass(frozen=True)
class CfIntervals:
    """Intervals for p(y_x) and p(y_x') induced by sensitivity params."""

    p_yx: Interval
    p_yxp: Interval

    def to_json(self) -> dict:
        return {"p_yx": self.p_yx.to_json(), "p_yxp": self.p_yxp.to_json()}


def cf_intervals(obs: ObservedJoint, params: SensitivityParams) -> CfIntervals:
    """Interventional probability intervals from latent-strata extremes.

    p(y_x) = p(x, y) + p(x') p(y | x', do(x)) and the counterfactual term
    is bracketed by [m_x, M_x], giving a closed-form interval; the primed
    case is symmetric. Degenerate params m = M = p(y | arm) reproduce the
    no-confounding reading p(y_x) = p(y | x).
    """
    params.check_against(obs)
    return CfIntervals(
        p_yx=Interval(obs.pxy + obs.p_xp * params.m_x,
                      obs.pxy + obs.p_xp * params.M_x),
        p_yxp=Interval(obs.px_y + obs.p_x * params.m_xp,
                       obs.px_y + obs.p_x * params.M_xp),
    )


def sensitivity_bounds(obs: ObservedJoint, params: SensitivityParams,
                       target: Target = Target.BENEFIT) -> BoundResult:
    """Benefit/harm bounds directly in the sensitivity parameterization.

    The four lower rows and four upper rows are written out verbatim:

      lb: 0
          p(x,y) + p(x') m_x - p(x',y) - p(x) M_xp
          p(x,y) - p(x) M_xp
          p(x') m_x - p(x',y)
      ub: p(x,y) + p(x') M_x
          1 - p(x',y) - p(x) m_xp
          p(x,y) + p(x',y')
          p(x) + p(x') M_x - p(x) m_xp

    This is algebraically the same as ``tian_pearl_bounds`` applied to
    ``cf_intervals`` output, and the two routes are required to agree to
    1e-12. At the vacuous params (0, 1, 0, 1) row ub3 dominates and the
    result collapses to ``obs_bounds``.
    """
    if target is Target.HARM:
        obs = obs.swap_x()
        params = params.swap()
    params.check_against(obs)
    px, pxp = obs.p_x, obs.p_xp
    lower = {
        "lb1": 0.0,
        "lb2": obs.pxy + pxp * params.m_x - obs.px_y - px * params.M_xp,
        "lb3": obs.pxy - px * params.M_xp,
        "lb4": pxp * params.m_x - obs.px_y,
    }
    upper = {
        "ub1": obs.pxy + pxp * params.M_x,
        "ub2": 1.0 - obs.px_y - px * params.m_xp,
        "ub3": obs.pxy + obs.px_y_,
        "ub4": px + pxp * params.M_x - px * params.m_xp,
    }
    return _assemble(lower, upper)


def ate_sensitivity_bounds(obs: ObservedJoint, params: SensitivityParams) -> Interval:
    """Bounds on the average effect p(y_x) - p(y_x').

    The endpoints are the extreme differences of the two counterfactual
    intervals; the result is clipped to [-1, 1]. Degenerate params
    (m = M on both arms) give a point interval.
    """
    params.check_against(obs)
    px, pxp = obs.p_x, obs.p_xp
    lo = obs.pxy + pxp * params.m_x - obs.px_y - px * params.M_xp
    hi = obs.pxy + pxp * params.M_x - obs.px_y - px * params.m_xp
    return Interval(max(-1.0, lo), min(1.0, hi), kind="signed")


@dataclass(frozen=True)
class InformativeRegions:
    """Where the sensitivity parameters actually move a bound.

    For the lower bound of ``target``, exactly two parameters enter (the
    min of the focal arm and the max of the other arm). The bound rises
    above zero if and only if the focal-arm min lies in
    ``(p_y_unexposed, p_y_exposed]`` (open below, closed above) or the
    other-arm max lies in ``[p_y_unexposed, p_y_exposed)`` (closed below,
    open above), where "exposed" means the arm whose success the target
    counts (x for benefit, x' for harm). Both regions are empty when the
    exposed conditional does not exceed the unexposed one, and ``None``
    is stored then.

    The upper bound improves on the observational envelope everywhere in
    the possible region; the improvement is strict somewhere if and only
    if p(y | exposed) differs from p(y' | unexposed), recorded in
    ``upper_strict``.
    """

    target: Target
    m_param: str
    M_param: str
    p_y_exposed: float
    p_y_unexposed: float
    lower_m_interval: Optional[tuple[float, float]]
    lower_M_interval: Optional[tuple[float, float]]
    upper_strict: bool
    upper_equals_possible: bool = True

    def to_json(self) -> dict:
        return {
            "target": self.target.value,
            "m_param": self.m_param,
            "M_param": self.M_param,
            "p_y_exposed": self.p_y_exposed,
            "p_y_unexposed": self.p_y_unexposed,
            "lower_m_interval": list(self.lower_m_interval) if self.lower_m_interval else None,
            "lower_M_interval": list(self.lower_M_interval) if self.lower_M_interval else None,
            "upper_strict": self.upper_strict,
            "upper_equals_possible": self.upper_equals_possible,
        }


def informative_regions(obs: ObservedJoint, target: Target = Target.BENEFIT) -> InformativeRegions:
    """Threshold intervals inside which each parameter is informative."""
    work = obs.swap_x() if target is Target.HARM else obs
    p_exp = work.p_y_given_x
    p_unexp = work.p_y_given_xp
    nonempty = p_unexp < p_exp
    region = (p_unexp, p_exp) if nonempty else None
    m_param, M_param = ("m_x", "M_xp") if target is Target.BENEFIT else ("m_xp", "M_x")
    return InformativeRegions(
        target=target,
        m_param=m_param,
        M_param=M_param,
        p_y_exposed=p_exp,
        p_y_unexposed=p_unexp,
        lower_m_interval=region,
        lower_M_interval=region,
        upper_strict=abs(p_exp - (1.0 - p_unexp)) > TOL_PROB,
    )


@dataclass(frozen=True)
class PnPsBounds:
    """Bounds for the probabilities of necessity and of sufficiency."""

    pn: Interval
    ps: Interval

    def to_json(self) -> dict:
        return {"pn": self.pn.to_json(), "ps": self.ps.to_json()}


def pn_ps_bounds(obs: ObservedJoint, p_yx: Interval, p_yxp: Interval) -> PnPsBounds:
    """Attribution bounds among the treated-recovered and the untreated-unrecovered.

    PN = p(y'_x' | x, y) is the chance that a treated, recovered unit
    would not have recovered untreated; PS = p(y_x | x', y') is the
    chance an untreated, unrecovered unit would have recovered treated.

      max{0, (p(y) - p(y_x')) / p(x,y)} <= PN <= min{1, (p(y'_x') - p(x',y')) / p(x,y)}
      max{0, (p(y_x) - p(y)) / p(x',y')} <= PS <= min{1, (p(y_x) - p(x,y)) / p(x',y')}

    Interval inputs propagate like in ``tian_pearl_bounds`` (lower ends
    use the least favorable endpoint). The benefit decomposition
    p(benefit) = p(x,y) PN + p(x',y') PS ties these to the other bounds
    and is exercised in the tests. Requires p(x,y) > 0 and p(x',y') > 0,
    else ZeroConditioningEvent; vacuous counterfactual intervals yield
    the vacuous [0, 1] on both.
    """
    if obs.pxy < TOL_PROB:
        raise ZeroConditioningEvent("p(x, y) is zero, PN is undefined")
    if obs.px_y_ < TOL_PROB:
        raise ZeroConditioningEvent("p(x', y') is zero, PS is undefined")
    py = obs.p_y
    pn_lo = max(0.0, (py - p_yxp.hi) / obs.pxy)
    pn_hi = min(1.0, ((1.0 - p_yxp.lo) - obs.px_y_) / obs.pxy)
    ps_lo = max(0.0, (p_yx.lo - py) / obs.px_y_)
    ps_hi = min(1.0, (p_yx.hi - obs.pxy) / obs.px_y_)
    if pn_lo > pn_hi + TOL_PROB:
        raise EmptyInterval(f"PN bounds crossed: [{pn_lo}, {pn_hi}]")
    if ps_lo > ps_hi + TOL_PROB:
        raise EmptyInterval(f"PS bounds crossed: [{ps_lo}, {ps_hi}]")
    return PnPsBounds(
        pn=Interval(min(pn_lo, pn_hi), max(pn_lo, pn_hi)),
        ps=Interval(min(ps_lo, ps_hi), max(ps_lo, ps_hi)),
    )

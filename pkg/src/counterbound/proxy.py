"""Tighter benefit and harm bounds from a confounder proxy.

A nondifferential binary proxy of the unmeasured confounder makes three
direction checks testable on the observed joint over (X, Y, V): the
trend of E[Y | x, V], E[Y | x', V], and E[X | V] across the two proxy
levels.  Depending on which directions hold, up to eight strengthened
rules apply; each rule replaces an unidentifiable counterfactual risk in
the Tian-Pearl rows with the partially adjusted risk S_x = sum_v
p(y | x, v) p(v) from the correct side.  The final interval is the
intersection of every fired rule with the observational envelope.

Direction convention: a conditional is "nonincreasing" when its value at
the first proxy level is at most its value at the second, mirroring how
such trend checks are usually reported.  Differences within
``tie_tolerance`` count as flat, written ``Direction.BOTH``, and a flat
direction satisfies either antecedent.  The one exception is a joint
where all three checks are flat at once: that pattern is exactly what an
irrelevant proxy produces, the adjustment carries no information about
the confounder, and firing any rule could exclude the truth.  We then
report a collapse to the observational envelope instead.

The default tie tolerance is zero: only exact equality counts as a tie.
An exact tie is structural (every model consistent with the joint makes
both weak orderings hold, so firing both rules of a pair is sound), but
a near-tie is not: the one-sided rules are discontinuous in their
antecedents, and firing a rule whose ordering fails by even 1e-13 can
move a bound by orders of magnitude more than that.  Callers who want
fuzzier direction reads for exploration can pass a positive tolerance,
trading away the soundness guarantee inside that window.

The collapse check is the one place that stays tolerant regardless of
the tie setting: a joint produced by an irrelevant proxy reaches us
through float arithmetic, so its three gaps are round-off residue
rather than exact zeros.  If every gap sits inside ``FLAT_NOISE_BAND``
the dispatch collapses just as it would for exact flatness.  Collapsing
is sound for any input, so the band can only cost sharpness, and only
on joints whose direction signal is smaller than double rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bounds import BoundResult, _assemble
from .model import ProxyJoint

DEFAULT_TIE_TOLERANCE = 0.0

# Width below which a direction gap is indistinguishable from float
# round-off in an eight-cell joint.  When every testable gap sits inside
# this band the proxy carries no usable direction information and the
# dispatch collapses to the envelope, which is sound for any input.  A
# joint with at least one resolvable gap is safe to dispatch: a rule
# picked by the noise sign of an in-band gap can then be wrong by at
# most that gap, not by the size of the hidden confounding.
FLAT_NOISE_BAND = 1e-12


class Direction(enum.Enum):
    """Trend of a conditional across the two proxy levels."""

    NONINCREASING = "nonincreasing"
    NONDECREASING = "nondecreasing"
    BOTH = "both"

    @classmethod
    def classify(cls, gap: float, tie_tolerance: float) -> "Direction":
        if abs(gap) <= tie_tolerance:
            return cls.BOTH
        return cls.NONDECREASING if gap > 0 else cls.NONINCREASING

    @property
    def signs(self) -> frozenset[int]:
        if self is Direction.NONINCREASING:
            return frozenset({-1})
        if self is Direction.NONDECREASING:
            return frozenset({+1})
        return frozenset({-1, +1})


def _agree(a: frozenset[int], b: frozenset[int]) -> bool:
    return bool(a & b)


def _oppose(a: frozenset[int], b: frozenset[int]) -> bool:
    return (-1 in a and +1 in b) or (+1 in a and -1 in b)


@dataclass(frozen=True)
class AdjustedEffects:
    """Crude and proxy-adjusted treatment-effect estimates.

    ``s_x`` and ``s_xp`` are the partially adjusted risks under exposure
    and non-exposure; their difference is ``ate_obs``.  ``ate_crude`` is
    the unadjusted risk difference p(y|x) - p(y|x').
    """

    s_x: float
    s_xp: float
    ate_crude: float
    ate_obs: float

    def to_json(self) -> dict:
        return {
            "S_x": self.s_x,
            "S_xprime": self.s_xp,
            "ate_crude": self.ate_crude,
            "ate_obs": self.ate_obs,
        }


@dataclass(frozen=True)
class MonotonicityReport:
    """Observed directions of the three testable trend checks.

    ``jointly_monotone`` is true when the two outcome trends share a
    common direction, i.e. E[Y|X,V] is monotone as a whole.  ``all_flat``
    marks the uninformative pattern where every check ties; it also
    triggers when every gap sits inside the numerical noise band, in
    which case the individual directions are round-off artifacts and
    should not be read as trends.
    """

    y_given_x: Direction
    y_given_xp: Direction
    x_given_v: Direction
    jointly_monotone: bool
    tie_tolerance: float
    max_abs_gap: float

    @property
    def all_flat(self) -> bool:
        return self.max_abs_gap <= max(self.tie_tolerance, FLAT_NOISE_BAND)

    def to_json(self) -> dict:
        return {
            "dir_y_given_x_V": self.y_given_x.value,
            "dir_y_given_xprime_V": self.y_given_xp.value,
            "dir_x_given_V": self.x_given_v.value,
            "jointly_monotone": self.jointly_monotone,
            "tie_tolerance": self.tie_tolerance,
            "max_abs_gap": self.max_abs_gap,
            "all_flat": self.all_flat,
        }


def adjusted_effects(pj: ProxyJoint) -> AdjustedEffects:
    """Compute crude and partially adjusted risk differences."""
    obs = pj.collapse()
    s_x = pj.p_y_given("x", "v") * pj.p_v + pj.p_y_given("x", "vp") * pj.p_vp
    s_xp = pj.p_y_given("xp", "v") * pj.p_v + pj.p_y_given("xp", "vp") * pj.p_vp
    return AdjustedEffects(
        s_x=s_x,
        s_xp=s_xp,
        ate_crude=obs.p_y_given_x - obs.p_y_given_xp,
        ate_obs=s_x - s_xp,
    )


def monotonicity_report(pj: ProxyJoint,
                        tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> MonotonicityReport:
    """Classify the three testable directions at the given tie tolerance."""
    gap_y_x = pj.p_y_given("x", "v") - pj.p_y_given("x", "vp")
    gap_y_xp = pj.p_y_given("xp", "v") - pj.p_y_given("xp", "vp")
    gap_x = pj.p_x_given("v") - pj.p_x_given("vp")
    y_x = Direction.classify(gap_y_x, tie_tolerance)
    y_xp = Direction.classify(gap_y_xp, tie_tolerance)
    x_v = Direction.classify(gap_x, tie_tolerance)
    return MonotonicityReport(
        y_given_x=y_x,
        y_given_xp=y_xp,
        x_given_v=x_v,
        jointly_monotone=_agree(y_x.signs, y_xp.signs),
        tie_tolerance=tie_tolerance,
        max_abs_gap=max(abs(gap_y_x), abs(gap_y_xp), abs(gap_x)),
    )


def _apply_per_arm_rules(effects: AdjustedEffects, report: MonotonicityReport,
                         p_y: float, lower: dict, upper: dict,
                         fired: list[str]) -> None:
    """Apply the per-arm rules, which need no joint monotonicity.

    Each pair always resolves because any conditional on a binary V is
    monotone in one direction or the other (or flat, firing both).
    """
    y_x = report.y_given_x.signs
    y_xp = report.y_given_xp.signs
    x_v = report.x_given_v.signs
    if _oppose(y_x, x_v):
        fired.append("tighter5")
        lower["s_exposed_minus_outcome"] = effects.s_x - p_y
    if _agree(y_x, x_v):
        fired.append("tighter6")
        upper["s_exposed"] = effects.s_x
    if _oppose(y_xp, x_v):
        fired.append("tighter7")
        lower["outcome_minus_s_unexposed"] = p_y - effects.s_xp
    if _agree(y_xp, x_v):
        fired.append("tighter8")
        upper["one_minus_s_unexposed"] = 1.0 - effects.s_xp


def _dispatch(pj: ProxyJoint, tie_tolerance: float
              ) -> tuple[BoundResult, AdjustedEffects, MonotonicityReport]:
    """Run the full rule dispatch for the benefit of the given joint.

    Harm is obtained by calling this on ``pj.swap_x()``: every rule's
    harm form is its benefit form with the exposure levels exchanged.
    """
    obs = pj.collapse()
    effects = adjusted_effects(pj)
    report = monotonicity_report(pj, tie_tolerance)

    lower = {"zero": 0.0}
    upper = {"envelope": obs.pxy + obs.px_y_}
    fired: list[str] = []

    if not report.all_flat:
        p_y = obs.p_y
        offdiag = obs.pxy_ + obs.px_y

        if report.jointly_monotone:
            # whichever side of the crude-vs-adjusted comparison holds
            # tells on which side of ate_obs the true effect lies
            if effects.ate_crude <= effects.ate_obs + tie_tolerance:
                fired.append("tighter1")
                lower["ate_obs"] = effects.ate_obs
            if effects.ate_obs <= effects.ate_crude + tie_tolerance:
                fired.append("tighter2")
                upper["ate_obs_plus_offdiag"] = effects.ate_obs + offdiag
            common = report.y_given_x.signs & report.y_given_xp.signs
            x_v = report.x_given_v.signs
            if _oppose(common, x_v):
                fired.append("tighter3")
                lower["ate_obs"] = effects.ate_obs
                lower["outcome_minus_s_unexposed"] = p_y - effects.s_xp
                lower["s_exposed_minus_outcome"] = effects.s_x - p_y
            if _agree(common, x_v):
                fired.append("tighter4")
                upper["s_exposed"] = effects.s_x
                upper["one_minus_s_unexposed"] = 1.0 - effects.s_xp
                upper["ate_obs_plus_offdiag"] = effects.ate_obs + offdiag

        _apply_per_arm_rules(effects, report, p_y, lower, upper, fired)

    result = _assemble(lower, upper, rules_fired=tuple(fired))
    return result, effects, report


@dataclass(frozen=True)
class ProxyBounds:
    """Benefit and harm bounds from a proxy joint, with dispatch traces.

    ``effects`` and ``report`` are stated in the benefit orientation;
    the harm side recomputes both on the exposure-swapped joint, which
    flips the E[X|V] direction and negates the effect estimates.
    """

    benefit: BoundResult
    harm: BoundResult
    effects: AdjustedEffects
    report: MonotonicityReport
    collapsed: bool

    def to_json(self) -> dict:
        return {
            "benefit": self.benefit.to_json(),
            "harm": self.harm.to_json(),
            "effects": self.effects.to_json(),
            "monotonicity": self.report.to_json(),
            "collapsed": self.collapsed,
        }


def proxy_bounds(pj: ProxyJoint, tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> ProxyBounds:
    """Intersect every applicable proxy rule for both targets."""
    benefit, effects, report = _dispatch(pj, tie_tolerance)
    harm, _, _ = _dispatch(pj.swap_x(), tie_tolerance)
    return ProxyBounds(
        benefit=benefit,
        harm=harm,
        effects=effects,
        report=report,
        collapsed=report.all_flat,
    )


def condition_free_interval(pj: ProxyJoint,
                            tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> BoundResult:
    """Benefit bounds using only the always-resolvable per-arm rules.

    This drops the rules that need joint outcome monotonicity or the
    crude-vs-adjusted comparison, keeping the four per-arm rules whose
    antecedents resolve for every input.  It is the variant swept in the
    simulation study.
    """
    obs = pj.collapse()
    effects = adjusted_effects(pj)
    report = monotonicity_report(pj, tie_tolerance)

    lower = {"zero": 0.0}
    upper = {"envelope": obs.pxy + obs.px_y_}
    fired: list[str] = []
    if not report.all_flat:
        _apply_per_arm_rules(effects, report, obs.p_y, lower, upper, fired)
    return _assemble(lower, upper, rules_fired=tuple(fired))

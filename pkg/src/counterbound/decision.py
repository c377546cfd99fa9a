"""Weighted social-good intervals and the ATE compliance region.

The decision layer treats the benefit and harm bounds as a rectangle of
admissible (benefit, harm) pairs.  A separately bounded treatment effect
cuts a diagonal band through that rectangle, because effect = benefit
minus harm; only pairs inside the band comply with all three intervals
at once.  The social good w_b * benefit - w_h * harm is linear, so its
extremes over the clipped polygon sit at vertices, which we enumerate
exactly rather than calling an optimizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import TOL_PROB, InfeasibleRegion, Interval, SchemaError


@dataclass(frozen=True)
class SocialWeights:
    """Nonnegative weights for benefit gained and harm caused."""

    w_benefit: float
    w_harm: float

    def __post_init__(self) -> None:
        for name in ("w_benefit", "w_harm"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise SchemaError(f"{name} must be finite and nonnegative, got {value}")

    def to_json(self) -> dict:
        return {"w_benefit": self.w_benefit, "w_harm": self.w_harm}


@dataclass(frozen=True)
class PolicyPoint:
    """A (benefit, harm) pair attaining a social-good extreme."""

    benefit: float
    harm: float

    def to_json(self) -> dict:
        return {"benefit": self.benefit, "harm": self.harm}


@dataclass(frozen=True)
class RefinedSocialGood:
    interval: Interval
    argmin: PolicyPoint
    argmax: PolicyPoint

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "argmin": self.argmin.to_json(),
            "argmax": self.argmax.to_json(),
        }


def social_good_naive(benefit: Interval, harm: Interval,
                      w: SocialWeights) -> Interval:
    """Social-good range ignoring any relation between benefit and harm."""
    return Interval(
        w.w_benefit * benefit.lo - w.w_harm * harm.hi,
        w.w_benefit * benefit.hi - w.w_harm * harm.lo,
        kind="free",
    )


def _feasible_vertices(benefit: Interval, harm: Interval,
                       ate: Interval) -> list[tuple[float, float]]:
    """Vertices of the (benefit, harm) box clipped to the effect band.

    Candidates are the box corners plus intersections of the two band
    edges (benefit - harm = ate.lo and = ate.hi) with the box sides;
    everything else on the boundary is a convex combination of these.
    """
    b_lo, b_hi = benefit.lo, benefit.hi
    h_lo, h_hi = harm.lo, harm.hi
    if ate.lo > b_hi - h_lo + TOL_PROB or ate.hi < b_lo - h_hi - TOL_PROB:
        raise InfeasibleRegion(
            f"effect band [{ate.lo}, {ate.hi}] misses the benefit/harm box")

    candidates: list[tuple[float, float]] = []
    for b in (b_lo, b_hi):
        for h in (h_lo, h_hi):
            if ate.lo - TOL_PROB <= b - h <= ate.hi + TOL_PROB:
                candidates.append((b, h))
    for edge in (ate.lo, ate.hi):
        for h in (h_lo, h_hi):
            b = h + edge
            if b_lo - TOL_PROB <= b <= b_hi + TOL_PROB:
                candidates.append((min(max(b, b_lo), b_hi), h))
        for b in (b_lo, b_hi):
            h = b - edge
            if h_lo - TOL_PROB <= h <= h_hi + TOL_PROB:
                candidates.append((b, min(max(h, h_lo), h_hi)))

    unique: dict[tuple[float, float], tuple[float, float]] = {}
    for b, h in candidates:
        unique[(round(b, 12), round(h, 12))] = (b, h)
    vertices = list(unique.values())
    if not vertices:
        raise InfeasibleRegion(
            f"effect band [{ate.lo}, {ate.hi}] misses the benefit/harm box")
    return vertices


def social_good_refined(benefit: Interval, harm: Interval, ate: Interval,
                        w: SocialWeights) -> RefinedSocialGood:
    """Exact social-good range over pairs that comply with the effect band."""
    vertices = _feasible_vertices(benefit, harm, ate)
    scored = sorted((w.w_benefit * b - w.w_harm * h, b, h) for b, h in vertices)
    g_min, b_min, h_min = scored[0]
    g_max, b_max, h_max = scored[-1]
    return RefinedSocialGood(
        interval=Interval(g_min, g_max, kind="free"),
        argmin=PolicyPoint(benefit=b_min, harm=h_min),
        argmax=PolicyPoint(benefit=b_max, harm=h_max),
    )


def compliance_region(benefit: Interval, harm: Interval,
                      ate: Interval) -> list[tuple[float, float]]:
    """Ordered polygon of complying (harm, benefit) pairs, for plotting."""
    vertices = _feasible_vertices(benefit, harm, ate)
    points = [(h, b) for b, h in vertices]
    if len(points) <= 2:
        return sorted(points)
    cx = sum(h for h, _ in points) / len(points)
    cy = sum(b for _, b in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))

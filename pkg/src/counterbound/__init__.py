"""Bounding the probabilities of benefit and harm.

Partial-identification bounds for p(benefit) = p(y_x, y'_{x'}) and
p(harm) = p(y_{x'}, y'_x) of a binary treatment/outcome pair, computed
from an observed joint alone, sharpened by confounding sensitivity
parameters, or sharpened by a proxy of the latent confounder, plus the
decision layer that turns bound intervals into social-good statements.
"""

from .bounds import (
    BoundResult,
    CfIntervals,
    InformativeRegions,
    PnPsBounds,
    Target,
    ate_sensitivity_bounds,
    cf_intervals,
    informative_regions,
    obs_bounds,
    pn_ps_bounds,
    sensitivity_bounds,
    tian_pearl_bounds,
)
from .decision import (
    PolicyPoint,
    RefinedSocialGood,
    SocialWeights,
    compliance_region,
    social_good_naive,
    social_good_refined,
)
from .model import (
    CounterboundError,
    DegenerateMargin,
    EmptyInterval,
    InfeasibleRegion,
    Interval,
    NegativeCell,
    NotNormalized,
    ObservedJoint,
    ParamsOutsidePossibleRegion,
    ProxyJoint,
    SchemaError,
    Scm,
    SensitivityParams,
    TOL_NUM,
    TOL_PROB,
    Truth,
    ZeroConditioningEvent,
    scm_forward,
    scm_forward_proxy,
    scm_truth,
)
from .proxy import (
    DEFAULT_TIE_TOLERANCE,
    FLAT_NOISE_BAND,
    AdjustedEffects,
    Direction,
    MonotonicityReport,
    ProxyBounds,
    adjusted_effects,
    condition_free_interval,
    monotonicity_report,
    proxy_bounds,
)
from .study import (
    SamplerSpec,
    SimResult,
    SweepResult,
    SweepSpec,
    simulate,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustedEffects",
    "BoundResult",
    "CfIntervals",
    "CounterboundError",
    "DEFAULT_TIE_TOLERANCE",
    "DegenerateMargin",
    "Direction",
    "EmptyInterval",
    "FLAT_NOISE_BAND",
    "InfeasibleRegion",
    "InformativeRegions",
    "Interval",
    "MonotonicityReport",
    "NegativeCell",
    "NotNormalized",
    "ObservedJoint",
    "ParamsOutsidePossibleRegion",
    "PnPsBounds",
    "PolicyPoint",
    "ProxyBounds",
    "ProxyJoint",
    "RefinedSocialGood",
    "SamplerSpec",
    "SchemaError",
    "Scm",
    "SensitivityParams",
    "SimResult",
    "SocialWeights",
    "SweepResult",
    "SweepSpec",
    "TOL_NUM",
    "TOL_PROB",
    "Target",
    "Truth",
    "ZeroConditioningEvent",
    "adjusted_effects",
    "ate_sensitivity_bounds",
    "cf_intervals",
    "compliance_region",
    "condition_free_interval",
    "informative_regions",
    "monotonicity_report",
    "obs_bounds",
    "pn_ps_bounds",
    "proxy_bounds",
    "scm_forward",
    "scm_forward_proxy",
    "scm_truth",
    "sensitivity_bounds",
    "simulate",
    "social_good_naive",
    "social_good_refined",
    "sweep",
    "tian_pearl_bounds",
]

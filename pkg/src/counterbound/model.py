"""Core types: probabilities, intervals, observed tables, and structural models.

Conventions used throughout the package. The treatment X is binary with
levels written ``x`` (treated) and ``xp`` (untreated, "x prime"). Same for
the outcome Y (``y`` recovery, ``y_`` no recovery in JSON keys) and the
proxy V. The latent confounder U is binary with levels ``u`` and ``u2``.

JSON field names are part of the public file format and are fixed:

* ObservedJoint: ``pxy, pxy_, px_y, px_y_``. A trailing underscore primes
  the symbol it follows, so ``px_y`` is p(x', y) and ``pxy_`` is p(x, y').
* ProxyJoint: the same scheme with a ``v`` suffix, eight keys
  ``pxyv, pxyv_, pxy_v, pxy_v_, px_yv, px_yv_, px_y_v, px_y_v_``.
* Scm: ``p_u, p_x_given_u, p_x_given_u2, p_y_given_x_u, p_y_given_x_u2,
  p_y_given_x2_u, p_y_given_x2_u2`` and optionally ``p_v_given_u,
  p_v_given_u2``.

Unknown fields in any of these documents are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Mapping, Optional

__all__ = [
    "TOL_PROB",
    "TOL_NUM",
    "CounterboundError",
    "SchemaError",
    "NegativeCell",
    "NotNormalized",
    "DegenerateMargin",
    "ZeroConditioningEvent",
    "ParamsOutsidePossibleRegion",
    "EmptyInterval",
    "InfeasibleRegion",
    "Interval",
    "ObservedJoint",
    "ProxyJoint",
    "SensitivityParams",
    "Scm",
    "Truth",
    "validate_probability",
    "scm_forward",
    "scm_forward_proxy",
    "scm_truth",
]

# Validation tolerance for user-facing probability inputs.
TOL_PROB = 1e-9
# Tolerance for internal arithmetic identities (ties, consistency checks).
TOL_NUM = 1e-12


class CounterboundError(Exception):
    """Base class for all domain errors raised by this package.

    ``code`` is a stable machine-readable identifier used by the CLI and
    the HTTP service. ``exit_code`` is the process exit status the CLI
    maps the error to (2 for validation problems, 3 for degenerate
    margins).
    """

    code = "CounterboundError"
    exit_code = 2


class SchemaError(CounterboundError):
    """Malformed input document: unknown/missing fields or bad values."""

    code = "SchemaError"


class NegativeCell(CounterboundError):
    """A probability table cell is negative beyond tolerance."""

    code = "NegativeCell"


class NotNormalized(CounterboundError):
    """Probability table cells do not sum to one."""

    code = "NotNormalized"


class DegenerateMargin(CounterboundError):
    """A conditioning margin is (numerically) zero.

    Raised lazily, when a conditional probability is actually requested,
    so that tables with empty treatment arms can still be constructed and
    used for computations that do not condition on the empty arm.
    """

    code = "DegenerateMargin"
    exit_code = 3


class ZeroConditioningEvent(CounterboundError):
    """The event conditioned on has zero probability."""

    code = "ZeroConditioningEvent"
    exit_code = 3


class ParamsOutsidePossibleRegion(CounterboundError):
    """Sensitivity parameters violate their possible region."""

    code = "ParamsOutsidePossibleRegion"


class EmptyInterval(CounterboundError):
    """Propagated bounds crossed (lower above upper beyond tolerance)."""

    code = "EmptyInterval"


class InfeasibleRegion(CounterboundError):
    """A constraint set (benefit/harm box with an effect band) is empty."""

    code = "InfeasibleRegion"


def validate_probability(value: float, name: str = "probability") -> float:
    """Validate a scalar probability, clamping float fuzz at 0 and 1.

    Values in [-TOL_PROB, 0) clamp to 0, values in (1, 1 + TOL_PROB]
    clamp to 1. Anything further out raises SchemaError naming ``name``.
    """
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise SchemaError(f"{name} must be a number, got {value!r}") from None
    if v != v:  # NaN
        raise SchemaError(f"{name} is NaN")
    if v < -TOL_PROB or v > 1.0 + TOL_PROB:
        raise SchemaError(f"{name} = {v} outside [0, 1]")
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


@dataclass(frozen=True, slots=True)
class Interval:
    """A closed interval [lo, hi] with a range kind.

    kind "probability" constrains endpoints to [0, 1], "signed" to
    [-1, 1] (average effects), "free" imposes no range (weighted social
    good values can leave [-1, 1]). Endpoint fuzz within TOL_PROB is
    clamped; a tiny inversion (lo above hi by at most TOL_PROB) is
    reordered. A genuine inversion raises EmptyInterval.
    """

    lo: float
    hi: float
    kind: str = "probability"

    def __post_init__(self) -> None:
        if self.kind not in ("probability", "signed", "free"):
            raise SchemaError(f"unknown interval kind {self.kind!r}")
        lo, hi = float(self.lo), float(self.hi)
        if lo != lo or hi != hi:
            raise SchemaError("interval endpoint is NaN")
        if lo > hi:
            if lo - hi > TOL_PROB:
                raise EmptyInterval(f"interval lower {lo} exceeds upper {hi}")
            lo, hi = hi, lo
        if self.kind != "free":
            floor = 0.0 if self.kind == "probability" else -1.0
            if lo < floor - TOL_PROB or hi > 1.0 + TOL_PROB:
                raise SchemaError(
                    f"{self.kind} interval [{lo}, {hi}] outside [{floor}, 1]"
                )
            lo = min(max(lo, floor), 1.0)
            hi = min(max(hi, floor), 1.0)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: float, kind: str = "probability") -> "Interval":
        return cls(value, value, kind)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float, tol: float = TOL_NUM) -> bool:
        return self.lo - tol <= value <= self.hi + tol

    def contains_interval(self, other: "Interval", tol: float = TOL_NUM) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi + TOL_PROB:
            raise EmptyInterval(f"intervals [{self.lo}, {self.hi}] and "
                                f"[{other.lo}, {other.hi}] do not meet")
        return Interval(lo, min(lo, hi) if lo > hi else hi, self.kind)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "kind": self.kind}


def _check_cells(obj, names: tuple[str, ...], typename: str) -> None:
    total = 0.0
    for name in names:
        raw = getattr(obj, name)
        try:
            cell = float(raw)
        except (TypeError, ValueError):
            raise SchemaError(f"{typename}.{name} must be a number, got {raw!r}") from None
        if cell != cell:
            raise SchemaError(f"{typename}.{name} is NaN")
        if cell < -TOL_PROB:
            raise NegativeCell(f"negative cell {name} = {cell}")
        cell = max(cell, 0.0)
        object.__setattr__(obj, name, cell)
        total += cell
    if abs(total - 1.0) > TOL_PROB:
        raise NotNormalized(
            f"{typename} cells ({', '.join(names)}) sum to {total!r}, expected 1"
        )


def _from_mapping(cls, data: Mapping, typename: str):
    if not isinstance(data, Mapping):
        raise SchemaError(f"{typename} document must be an object")
    expected = [f.name for f in fields(cls)]
    unknown = sorted(set(data) - set(expected))
    if unknown:
        raise SchemaError(f"{typename} has unknown field(s): {', '.join(unknown)}")
    required = [name for name in expected if name not in _OPTIONAL.get(typename, ())]
    missing = sorted(set(required) - set(data))
    if missing:
        raise SchemaError(f"{typename} is missing field(s): {', '.join(missing)}")
    return cls(**dict(data))


_OPTIONAL = {"Scm": ("p_v_given_u", "p_v_given_u2")}


@dataclass(frozen=True, slots=True)
class ObservedJoint:
    """Observed joint distribution p(X, Y) of a binary treatment and outcome.

    Cells follow the priming convention from the module docstring:
    ``pxy`` = p(x, y), ``pxy_`` = p(x, y'), ``px_y`` = p(x', y),
    ``px_y_`` = p(x', y').
    """

    pxy: float
    pxy_: float
    px_y: float
    px_y_: float

    CELLS = ("pxy", "pxy_", "px_y", "px_y_")

    def __post_init__(self) -> None:
        _check_cells(self, self.CELLS, "ObservedJoint")

    @classmethod
    def from_dict(cls, data: Mapping) -> "ObservedJoint":
        return _from_mapping(cls, data, "ObservedJoint")

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in self.CELLS}

    @property
    def p_x(self) -> float:
        return self.pxy + self.pxy_

    @property
    def p_xp(self) -> float:
        return self.px_y + self.px_y_

    @property
    def p_y(self) -> float:
        return self.pxy + self.px_y

    @property
    def p_y_given_x(self) -> float:
        if self.p_x < TOL_PROB:
            raise DegenerateMargin("p(x) is zero, cannot condition on the treated arm")
        return self.pxy / self.p_x

    @property
    def p_y_given_xp(self) -> float:
        if self.p_xp < TOL_PROB:
            raise DegenerateMargin("p(x') is zero, cannot condition on the untreated arm")
        return self.px_y / self.p_xp

    def swap_x(self) -> "ObservedJoint":
        """Relabel the treatment levels (x and x' exchanged)."""
        return ObservedJoint(pxy=self.px_y, pxy_=self.px_y_,
                             px_y=self.pxy, px_y_=self.pxy_)


@dataclass(frozen=True, slots=True)
class ProxyJoint:
    """Observed joint p(X, Y, V) with a binary outcome proxy V."""

    pxyv: float
    pxyv_: float
    pxy_v: float
    pxy_v_: float
    px_yv: float
    px_yv_: float
    px_y_v: float
    px_y_v_: float

    CELLS = ("pxyv", "pxyv_", "pxy_v", "pxy_v_",
             "px_yv", "px_yv_", "px_y_v", "px_y_v_")

    def __post_init__(self) -> None:
        _check_cells(self, self.CELLS, "ProxyJoint")

    @classmethod
    def from_dict(cls, data: Mapping) -> "ProxyJoint":
        return _from_mapping(cls, data, "ProxyJoint")

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in self.CELLS}

    def collapse(self) -> ObservedJoint:
        """Marginalize the proxy out, keeping p(X, Y)."""
        return ObservedJoint(
            pxy=self.pxyv + self.pxyv_,
            pxy_=self.pxy_v + self.pxy_v_,
            px_y=self.px_yv + self.px_yv_,
            px_y_=self.px_y_v + self.px_y_v_,
        )

    @property
    def p_v(self) -> float:
        return self.pxyv + self.pxy_v + self.px_yv + self.px_y_v

    @property
    def p_vp(self) -> float:
        return self.pxyv_ + self.pxy_v_ + self.px_yv_ + self.px_y_v_

    def p_x_and_v(self, x_level: str, v_level: str) -> float:
        """p(X = x_level, V = v_level) for levels "x"/"xp" and "v"/"vp"."""
        if x_level == "x":
            yv, y_v = ("pxyv", "pxy_v") if v_level == "v" else ("pxyv_", "pxy_v_")
        else:
            yv, y_v = ("px_yv", "px_y_v") if v_level == "v" else ("px_yv_", "px_y_v_")
        return getattr(self, yv) + getattr(self, y_v)

    def p_y_given(self, x_level: str, v_level: str) -> float:
        margin = self.p_x_and_v(x_level, v_level)
        if margin < TOL_PROB:
            raise DegenerateMargin(
                f"p({x_level}, {v_level}) is zero, cannot condition on it")
        if x_level == "x":
            cell = self.pxyv if v_level == "v" else self.pxyv_
        else:
            cell = self.px_yv if v_level == "v" else self.px_yv_
        return cell / margin

    def p_x_given(self, v_level: str) -> float:
        margin = self.p_v if v_level == "v" else self.p_vp
        if margin < TOL_PROB:
            raise DegenerateMargin(f"p({v_level}) is zero, cannot condition on it")
        return self.p_x_and_v("x", v_level) / margin

    def swap_x(self) -> "ProxyJoint":
        return ProxyJoint(
            pxyv=self.px_yv, pxyv_=self.px_yv_,
            pxy_v=self.px_y_v, pxy_v_=self.px_y_v_,
            px_yv=self.pxyv, px_yv_=self.pxyv_,
            px_y_v=self.pxy_v, px_y_v_=self.pxy_v_,
        )


@dataclass(frozen=True, slots=True)
class SensitivityParams:
    """Latent-strata extremes of the outcome probability in each arm.

    ``m_x``/``M_x`` are the smallest/largest value of p(y | x, u) over the
    latent strata u, and ``m_xp``/``M_xp`` the same for the untreated arm.
    Each pair must satisfy 0 <= m <= M <= 1. Compatibility with an
    observed table (m_x <= p(y|x) <= M_x, and the primed analogue) is
    checked against the table via :meth:`check_against`.
    """

    m_x: float
    M_x: float
    m_xp: float
    M_xp: float

    FIELDS = ("m_x", "M_x", "m_xp", "M_xp")

    def __post_init__(self) -> None:
        for name in self.FIELDS:
            object.__setattr__(self, name,
                               validate_probability(getattr(self, name), name))
        if self.m_x > self.M_x + TOL_PROB:
            raise ParamsOutsidePossibleRegion(
                f"m_x = {self.m_x} exceeds M_x = {self.M_x}")
        if self.m_xp > self.M_xp + TOL_PROB:
            raise ParamsOutsidePossibleRegion(
                f"m_xp = {self.m_xp} exceeds M_xp = {self.M_xp}")

    @classmethod
    def vacuous(cls) -> "SensitivityParams":
        """The no-information choice m = 0, M = 1 on both arms."""
        return cls(0.0, 1.0, 0.0, 1.0)

    @classmethod
    def from_dict(cls, data: Mapping) -> "SensitivityParams":
        return _from_mapping(cls, data, "SensitivityParams")

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in self.FIELDS}

    def swap(self) -> "SensitivityParams":
        """Exchange the roles of the two treatment arms."""
        return SensitivityParams(m_x=self.m_xp, M_x=self.M_xp,
                                 m_xp=self.m_x, M_xp=self.M_x)

    def check_against(self, obs: ObservedJoint, tol: float = TOL_PROB) -> None:
        """Raise ParamsOutsidePossibleRegion unless the params bracket the
        observed conditionals: m_x <= p(y|x) <= M_x and likewise primed."""
        pyx = obs.p_y_given_x
        pyxp = obs.p_y_given_xp
        if self.m_x > pyx + tol:
            raise ParamsOutsidePossibleRegion(
                f"m_x = {self.m_x} exceeds p(y|x) = {pyx}")
        if self.M_x < pyx - tol:
            raise ParamsOutsidePossibleRegion(
                f"M_x = {self.M_x} is below p(y|x) = {pyx}")
        if self.m_xp > pyxp + tol:
            raise ParamsOutsidePossibleRegion(
                f"m_xp = {self.m_xp} exceeds p(y|x') = {pyxp}")
        if self.M_xp < pyxp - tol:
            raise ParamsOutsidePossibleRegion(
                f"M_xp = {self.M_xp} is below p(y|x') = {pyxp}")


@dataclass(frozen=True, slots=True)
class Scm:
    """A structural model with one binary latent confounder U.

    U causes X and Y; V, when present, is a nondifferential proxy of U
    (V depends on U only, so V is independent of X and Y given U). The
    ``2`` suffix denotes the second level of the conditioning variable:
    ``p_x_given_u2`` is p(x | u').
    """

    p_u: float
    p_x_given_u: float
    p_x_given_u2: float
    p_y_given_x_u: float
    p_y_given_x_u2: float
    p_y_given_x2_u: float
    p_y_given_x2_u2: float
    p_v_given_u: Optional[float] = None
    p_v_given_u2: Optional[float] = None

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name.startswith("p_v"):
                if value is not None:
                    object.__setattr__(self, f.name,
                                       validate_probability(value, f.name))
            else:
                object.__setattr__(self, f.name,
                                   validate_probability(value, f.name))
        if (self.p_v_given_u is None) != (self.p_v_given_u2 is None):
            raise SchemaError(
                "p_v_given_u and p_v_given_u2 must be given together")

    @classmethod
    def from_dict(cls, data: Mapping) -> "Scm":
        return _from_mapping(cls, data, "Scm")

    def to_json(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        if not self.has_proxy:
            out.pop("p_v_given_u")
            out.pop("p_v_given_u2")
        return out

    @property
    def has_proxy(self) -> bool:
        return self.p_v_given_u is not None

    @property
    def proxy_relevant(self) -> Optional[bool]:
        """Whether V carries any information about U; None without a proxy."""
        if not self.has_proxy:
            return None
        return abs(self.p_v_given_u - self.p_v_given_u2) > TOL_PROB


def scm_forward(scm: Scm) -> ObservedJoint:
    """The observational joint p(X, Y) implied by the model.

    Each cell marginalizes the latent strata, for example
    p(x, y) = sum_u p(y | x, u) p(x | u) p(u).
    """
    pu, pu2 = scm.p_u, 1.0 - scm.p_u
    px_u, px_u2 = scm.p_x_given_u, scm.p_x_given_u2
    return ObservedJoint(
        pxy=scm.p_y_given_x_u * px_u * pu + scm.p_y_given_x_u2 * px_u2 * pu2,
        pxy_=(1.0 - scm.p_y_given_x_u) * px_u * pu
        + (1.0 - scm.p_y_given_x_u2) * px_u2 * pu2,
        px_y=scm.p_y_given_x2_u * (1.0 - px_u) * pu
        + scm.p_y_given_x2_u2 * (1.0 - px_u2) * pu2,
        px_y_=(1.0 - scm.p_y_given_x2_u) * (1.0 - px_u) * pu
        + (1.0 - scm.p_y_given_x2_u2) * (1.0 - px_u2) * pu2,
    )


def scm_forward_proxy(scm: Scm) -> ProxyJoint:
    """The observational joint p(X, Y, V); requires proxy parameters.

    V is nondifferential, so each cell factorizes as
    p(x, y, v) = sum_u p(y | x, u) p(x | u) p(v | u) p(u).
    """
    if not scm.has_proxy:
        raise SchemaError("Scm has no proxy parameters (p_v_given_u missing)")
    pu, pu2 = scm.p_u, 1.0 - scm.p_u
    pv_u, pv_u2 = scm.p_v_given_u, scm.p_v_given_u2

    def cell(py_u, py_u2, px_u, px_u2, v_primed):
        wv_u = (1.0 - pv_u) if v_primed else pv_u
        wv_u2 = (1.0 - pv_u2) if v_primed else pv_u2
        return py_u * px_u * wv_u * pu + py_u2 * px_u2 * wv_u2 * pu2

    yx, yx2 = scm.p_y_given_x_u, scm.p_y_given_x_u2
    yxp, yxp2 = scm.p_y_given_x2_u, scm.p_y_given_x2_u2
    px_u, px_u2 = scm.p_x_given_u, scm.p_x_given_u2
    pxp_u, pxp_u2 = 1.0 - px_u, 1.0 - px_u2
    return ProxyJoint(
        pxyv=cell(yx, yx2, px_u, px_u2, False),
        pxyv_=cell(yx, yx2, px_u, px_u2, True),
        pxy_v=cell(1.0 - yx, 1.0 - yx2, px_u, px_u2, False),
        pxy_v_=cell(1.0 - yx, 1.0 - yx2, px_u, px_u2, True),
        px_yv=cell(yxp, yxp2, pxp_u, pxp_u2, False),
        px_yv_=cell(yxp, yxp2, pxp_u, pxp_u2, True),
        px_y_v=cell(1.0 - yxp, 1.0 - yxp2, pxp_u, pxp_u2, False),
        px_y_v_=cell(1.0 - yxp, 1.0 - yxp2, pxp_u, pxp_u2, True),
    )


@dataclass(frozen=True, slots=True)
class Truth:
    """Oracle quantities of a structural model.

    ``tp_benefit`` and ``tp_harm`` are the counterfactual-frontier bounds
    evaluated at the model's true interventional probabilities; they are
    computed here independently of the bounds module so that tests can
    compare the two routes.
    """

    p_yx: float
    p_yxp: float
    ate: float
    tp_benefit: Interval
    tp_harm: Interval
    true_params: SensitivityParams


def _frontier_rows_at_point(obs: ObservedJoint, p_yx: float, p_yxp: float):
    """Benefit bound rows at known interventional probabilities."""
    py = obs.p_y
    lo = max(0.0, p_yx - p_yxp, py - p_yxp, p_yx - py)
    hi = min(p_yx, 1.0 - p_yxp, obs.pxy + obs.px_y_,
             p_yx - p_yxp + obs.pxy_ + obs.px_y)
    return lo, hi


def scm_truth(scm: Scm) -> Truth:
    """Interventional truths and the tight bounds evaluated at them."""
    pu, pu2 = scm.p_u, 1.0 - scm.p_u
    p_yx = scm.p_y_given_x_u * pu + scm.p_y_given_x_u2 * pu2
    p_yxp = scm.p_y_given_x2_u * pu + scm.p_y_given_x2_u2 * pu2
    obs = scm_forward(scm)
    b_lo, b_hi = _frontier_rows_at_point(obs, p_yx, p_yxp)
    h_lo, h_hi = _frontier_rows_at_point(obs.swap_x(), p_yxp, p_yx)
    return Truth(
        p_yx=p_yx,
        p_yxp=p_yxp,
        ate=p_yx - p_yxp,
        tp_benefit=Interval(b_lo, b_hi),
        tp_harm=Interval(h_lo, h_hi),
        true_params=SensitivityParams(
            m_x=min(scm.p_y_given_x_u, scm.p_y_given_x_u2),
            M_x=max(scm.p_y_given_x_u, scm.p_y_given_x_u2),
            m_xp=min(scm.p_y_given_x2_u, scm.p_y_given_x2_u2),
            M_xp=max(scm.p_y_given_x2_u, scm.p_y_given_x2_u2),
        ),
    )

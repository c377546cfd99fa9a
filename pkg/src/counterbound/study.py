"""Parameter sweeps and the seeded simulation study.

Sweeps evaluate a chosen bound over a 2-D grid of sensitivity
parameters, marking grid cells that fall outside the possible region as
invalid data rather than errors, and report the conditional outcome
rates as overlay thresholds (the informative regions of every bound
start and stop at those two rates).

The simulation draws structural models with a proxy, compares the
observational envelope [a, b] against the condition-free proxy interval
[c, d] on each replicate, and aggregates how often and by how much the
proxy helps.  Replicate i's parameters are a pure function of the seed
and i, so runs are reproducible bit for bit and chunking does not
change results.
"""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .bounds import Target, ate_sensitivity_bounds, sensitivity_bounds
from .model import (
    DegenerateMargin,
    ObservedJoint,
    ParamsOutsidePossibleRegion,
    SchemaError,
    SensitivityParams,
)
from .proxy import DEFAULT_TIE_TOLERANCE, FLAT_NOISE_BAND

PARAM_NAMES = SensitivityParams.FIELDS
SWEEP_TARGETS = ("benefit", "harm", "ate")
SWEEP_SIDES = ("lower", "upper")

USEFULNESS_MARGIN = 1e-12


def thread_count() -> int:
    """Worker cap from the COUNTERBOUND_THREADS environment variable."""
    raw = os.environ.get("COUNTERBOUND_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepSpec:
    """What to evaluate on the grid and which two parameters vary."""

    target: str
    side: str
    axis1: str
    axis2: str
    fixed: Mapping[str, float] = field(default_factory=dict)
    resolution: int = 101

    def __post_init__(self) -> None:
        if self.target not in SWEEP_TARGETS:
            raise SchemaError(f"target must be one of {SWEEP_TARGETS}, "
                              f"got {self.target!r}")
        if self.side not in SWEEP_SIDES:
            raise SchemaError(f"side must be one of {SWEEP_SIDES}, "
                              f"got {self.side!r}")
        for axis in (self.axis1, self.axis2):
            if axis not in PARAM_NAMES:
                raise SchemaError(f"unknown sweep axis {axis!r}; "
                                  f"choose from {PARAM_NAMES}")
        if self.axis1 == self.axis2:
            raise SchemaError("sweep axes must be distinct")
        for name in self.fixed:
            if name not in PARAM_NAMES:
                raise SchemaError(f"unknown fixed parameter {name!r}")
            if name in (self.axis1, self.axis2):
                raise SchemaError(f"fixed parameter {name!r} is already an axis")
        if self.resolution < 2:
            raise SchemaError("resolution must be at least 2")

    def cell_params(self, value1: float, value2: float) -> SensitivityParams:
        values = {name: (0.0 if name.startswith("m") else 1.0)
                  for name in PARAM_NAMES}
        values.update(self.fixed)
        values[self.axis1] = value1
        values[self.axis2] = value2
        return SensitivityParams(**values)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    grid1: np.ndarray
    grid2: np.ndarray
    values: np.ndarray
    valid: np.ndarray
    thresholds: tuple[dict, ...]

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("axis1,axis2,value,valid\n")
        for i, v1 in enumerate(self.grid1):
            for j, v2 in enumerate(self.grid2):
                value = self.values[i, j]
                cell = "nan" if math.isnan(value) else repr(float(value))
                out.write(f"{float(v1)!r},{float(v2)!r},{cell},"
                          f"{1 if self.valid[i, j] else 0}\n")
        return out.getvalue()

    def thresholds_json(self) -> dict:
        return {
            "target": self.spec.target,
            "side": self.spec.side,
            "axis1": self.spec.axis1,
            "axis2": self.spec.axis2,
            "lines": list(self.thresholds),
        }

    def to_json(self) -> dict:
        return {
            "target": self.spec.target,
            "side": self.spec.side,
            "axis1": self.spec.axis1,
            "axis2": self.spec.axis2,
            "resolution": self.spec.resolution,
            "grid1": [float(v) for v in self.grid1],
            "grid2": [float(v) for v in self.grid2],
            "values": [[None if math.isnan(v) else float(v) for v in row]
                       for row in self.values],
            "valid": [[bool(v) for v in row] for row in self.valid],
            "thresholds": list(self.thresholds),
        }


def _cell_value(obs: ObservedJoint, spec: SweepSpec, v1: float,
                v2: float) -> tuple[float, bool]:
    try:
        params = spec.cell_params(v1, v2)
        if spec.target == "ate":
            interval = ate_sensitivity_bounds(obs, params)
        else:
            interval = sensitivity_bounds(obs, params,
                                          Target.parse(spec.target)).interval
    except ParamsOutsidePossibleRegion:
        return (math.nan, False)
    return (interval.lo if spec.side == "lower" else interval.hi, True)


def sweep(obs: ObservedJoint, spec: SweepSpec) -> SweepResult:
    """Evaluate one bound side over the grid, flagging invalid cells."""
    grid1 = np.linspace(0.0, 1.0, spec.resolution)
    grid2 = np.linspace(0.0, 1.0, spec.resolution)
    values = np.empty((spec.resolution, spec.resolution))
    valid = np.empty((spec.resolution, spec.resolution), dtype=bool)

    def fill_row(i: int) -> None:
        for j, v2 in enumerate(grid2):
            values[i, j], valid[i, j] = _cell_value(obs, spec, grid1[i], v2)

    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill_row, range(spec.resolution)))
    else:
        for i in range(spec.resolution):
            fill_row(i)

    rate_exposed = obs.p_y_given_x
    rate_unexposed = obs.p_y_given_xp
    thresholds = tuple(
        {"param": axis, "value": value, "label": label}
        for axis in (spec.axis1, spec.axis2)
        for value, label in ((rate_unexposed, "p(y|x')"),
                             (rate_exposed, "p(y|x)"))
    )
    return SweepResult(spec=spec, grid1=grid1, grid2=grid2, values=values,
                       valid=valid, thresholds=thresholds)


def _default_draw(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).random((n, 9))


@dataclass(frozen=True)
class SamplerSpec:
    """How replicate parameters are drawn.

    ``draw(n, seed)`` must return an (n, 9) array in (0, 1) whose
    columns are p(u), p(x|u), p(x|u'), p(y|x,u), p(y|x,u'), p(y|x',u),
    p(y|x',u'), p(v|u), p(v|u'), with row i depending only on the seed
    and i.
    """

    name: str = "uniform-iid"
    draw: Callable[[int, int], np.ndarray] = _default_draw


@dataclass(frozen=True)
class SimResult:
    """Envelope-vs-proxy comparison across replicates.

    Averages are over the useful replicates only, matching how the
    improvement is usually summarized; maxima are over all replicates.
    """

    n: int
    seed: int
    sampler: str
    usefulness_rate: float
    avg_gap_decrease: float
    max_gap_decrease: float
    avg_lower_increase: float
    max_lower_increase: float
    avg_upper_decrease: float
    max_upper_decrease: float
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    useful: np.ndarray

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "sampler": self.sampler,
            "usefulness_rate": self.usefulness_rate,
            "avg_gap_decrease": self.avg_gap_decrease,
            "max_gap_decrease": self.max_gap_decrease,
            "avg_lower_increase": self.avg_lower_increase,
            "max_lower_increase": self.max_lower_increase,
            "avg_upper_decrease": self.avg_upper_decrease,
            "max_upper_decrease": self.max_upper_decrease,
        }

    def records_csv(self) -> str:
        out = io.StringIO()
        out.write("a,b,c,d,useful\n")
        for i in range(self.n):
            out.write(f"{float(self.a[i])!r},{float(self.b[i])!r},"
                      f"{float(self.c[i])!r},{float(self.d[i])!r},"
                      f"{1 if self.useful[i] else 0}\n")
        return out.getvalue()


def _sign_with_ties(diff: np.ndarray, tol: float) -> np.ndarray:
    """-1, 0 or +1 per entry, where 0 marks a tie within tolerance."""
    sign = np.sign(diff)
    sign[np.abs(diff) <= tol] = 0
    return sign


def simulate(n: int, seed: int = 0,
             sampler: SamplerSpec | None = None) -> SimResult:
    """Draw n proxied models and score the condition-free interval.

    Every replicate is checked against its own ground truth; a
    containment violation raises immediately because it would mean the
    bound logic, not the data, is wrong.
    """
    if n < 1:
        raise SchemaError("n must be at least 1")
    sampler = sampler or SamplerSpec()
    params = np.asarray(sampler.draw(n, seed), dtype=float)
    if params.shape != (n, 9):
        raise SchemaError(f"sampler returned shape {params.shape}, "
                          f"expected {(n, 9)}")

    p_u = params[:, 0]
    p_u2 = 1.0 - p_u
    px_u, px_u2 = params[:, 1], params[:, 2]
    py_xu, py_xu2 = params[:, 3], params[:, 4]
    py_xpu, py_xpu2 = params[:, 5], params[:, 6]
    pv_u, pv_u2 = params[:, 7], params[:, 8]

    # the eight proxy-joint cells, each summed over the confounder; the
    # product order mirrors the scalar forward map so that replicate
    # values agree with it bit for bit
    def cell(py_arm_u, py_arm_u2, px_arm_u, px_arm_u2, pv_arm_u, pv_arm_u2):
        return (py_arm_u * px_arm_u * pv_arm_u * p_u
                + py_arm_u2 * px_arm_u2 * pv_arm_u2 * p_u2)

    pxyv = cell(py_xu, py_xu2, px_u, px_u2, pv_u, pv_u2)
    pxyvp = cell(py_xu, py_xu2, px_u, px_u2, 1.0 - pv_u, 1.0 - pv_u2)
    pxy_v = cell(1.0 - py_xu, 1.0 - py_xu2, px_u, px_u2, pv_u, pv_u2)
    pxy_vp = cell(1.0 - py_xu, 1.0 - py_xu2, px_u, px_u2,
                  1.0 - pv_u, 1.0 - pv_u2)
    px_yv = cell(py_xpu, py_xpu2, 1.0 - px_u, 1.0 - px_u2, pv_u, pv_u2)
    px_yvp = cell(py_xpu, py_xpu2, 1.0 - px_u, 1.0 - px_u2,
                  1.0 - pv_u, 1.0 - pv_u2)
    px_y_v = cell(1.0 - py_xpu, 1.0 - py_xpu2, 1.0 - px_u, 1.0 - px_u2,
                  pv_u, pv_u2)
    px_y_vp = cell(1.0 - py_xpu, 1.0 - py_xpu2, 1.0 - px_u, 1.0 - px_u2,
                   1.0 - pv_u, 1.0 - pv_u2)

    # observed joint and envelope, marginalizing the proxy out
    pxy = pxyv + pxyvp
    pxy_ = pxy_v + pxy_vp
    px_y = px_yv + px_yvp
    px_y_ = px_y_v + px_y_vp
    p_y = pxy + px_y
    a = np.zeros(n)
    b = pxy + px_y_

    # proxy conditionals and adjusted arm means
    p_v = pxyv + pxy_v + px_yv + px_y_v
    p_vp = pxyvp + pxy_vp + px_yvp + px_y_vp
    pxv = pxyv + pxy_v
    pxvp = pxyvp + pxy_vp
    pxpv = px_yv + px_y_v
    pxpvp = px_yvp + px_y_vp
    with np.errstate(divide="ignore", invalid="ignore"):
        py_xv = pxyv / pxv
        py_xvp = pxyvp / pxvp
        py_xpv = px_yv / pxpv
        py_xpvp = px_yvp / pxpvp
    s_x = py_xv * p_v + py_xvp * p_vp
    s_xp = py_xpv * p_v + py_xpvp * p_vp
    if not (np.isfinite(s_x).all() and np.isfinite(s_xp).all()):
        i = int(np.argmin(np.isfinite(s_x) & np.isfinite(s_xp)))
        raise DegenerateMargin(
            f"replicate {i} has an empty exposure/proxy stratum")

    # direction checks; 0 means an exact tie and fires both one-sided
    # rules, while gaps inside the noise band collapse only jointly
    gap_yx = py_xv - py_xvp
    gap_yxp = py_xpv - py_xpvp
    gap_x = pxv / p_v - pxvp / p_vp
    sign_yx = _sign_with_ties(gap_yx, DEFAULT_TIE_TOLERANCE)
    sign_yxp = _sign_with_ties(gap_yxp, DEFAULT_TIE_TOLERANCE)
    sign_x = _sign_with_ties(gap_x, DEFAULT_TIE_TOLERANCE)
    band = max(DEFAULT_TIE_TOLERANCE, FLAT_NOISE_BAND)
    all_flat = ((np.abs(gap_yx) <= band) & (np.abs(gap_yxp) <= band)
                & (np.abs(gap_x) <= band))

    fire5 = ~all_flat & (sign_yx * sign_x <= 0)
    fire6 = ~all_flat & (sign_yx * sign_x >= 0)
    fire7 = ~all_flat & (sign_yxp * sign_x <= 0)
    fire8 = ~all_flat & (sign_yxp * sign_x >= 0)

    c = np.maximum(a, np.where(fire5, s_x - p_y, -np.inf))
    c = np.maximum(c, np.where(fire7, p_y - s_xp, -np.inf))
    d = np.minimum(b, np.where(fire6, s_x, np.inf))
    d = np.minimum(d, np.where(fire8, 1.0 - s_xp, np.inf))

    # ground truth containment, with truths clipped to the envelope
    p_yx = p_u * py_xu + p_u2 * py_xu2
    p_yxp = p_u * py_xpu + p_u2 * py_xpu2
    ate = p_yx - p_yxp
    tp_lo = np.maximum.reduce([np.zeros(n), ate, p_y - p_yxp, p_yx - p_y])
    tp_hi = np.minimum.reduce([p_yx, 1.0 - p_yxp, b, ate + pxy_ + px_y])
    tp_lo = np.clip(tp_lo, a, b)
    tp_hi = np.clip(tp_hi, a, b)
    bad = (c > tp_lo + 1e-9) | (tp_hi > d + 1e-9)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise RuntimeError(
            f"soundness violation at replicate {i}: "
            f"[{c[i]}, {d[i]}] excludes truth [{tp_lo[i]}, {tp_hi[i]}]")

    useful = (a + USEFULNESS_MARGIN < c) | (d < b - USEFULNESS_MARGIN)
    gap_dec = (b - a) - (d - c)
    lower_inc = c - a
    upper_dec = b - d

    def avg_over_useful(values: np.ndarray) -> float:
        if not np.any(useful):
            return 0.0
        return float(values[useful].mean())

    return SimResult(
        n=n,
        seed=seed,
        sampler=sampler.name,
        usefulness_rate=float(useful.mean()),
        avg_gap_decrease=avg_over_useful(gap_dec),
        max_gap_decrease=float(gap_dec.max()),
        avg_lower_increase=avg_over_useful(lower_inc),
        max_lower_increase=float(lower_inc.max()),
        avg_upper_decrease=avg_over_useful(upper_dec),
        max_upper_decrease=float(upper_dec.max()),
        a=a, b=b, c=c, d=d, useful=useful,
    )

/** Session state for the explorer.
 *
 * Holds the loaded distribution, the current sensitivity parameters,
 * sweep resolution, and social weights, plus the last response per
 * panel. Parameters are clamped against the possible regions the
 * bounds endpoint reports, so the UI never submits an out-of-region
 * value: each slider floor/ceiling comes from the same metadata the
 * backend validates against.
 */

import type {
  BoundsReport,
  IntervalJson,
  ObservedJointJson,
  SensitivityParamsJson,
  SocialReport,
  SweepJson,
} from "./api.js";

export const PARAM_NAMES = ["m_x", "M_x", "m_xp", "M_xp"] as const;
export type ParamName = (typeof PARAM_NAMES)[number];

export type PossibleRegions = Record<ParamName, IntervalJson>;

function clamp(value: number, lo: number, hi: number): number {
  if (Number.isNaN(value)) {
    return lo;
  }
  return Math.min(hi, Math.max(lo, value));
}

/** Pull every parameter into its possible region.
 *
 * The regions share the outcome rates as their inner endpoints
 * (m_x <= p(y|x) <= M_x and likewise on the unexposed arm), so
 * per-parameter clamping also restores the m <= M ordering.
 */
export function clampParams(
  params: SensitivityParamsJson,
  regions: PossibleRegions,
): SensitivityParamsJson {
  const out = { ...params };
  for (const name of PARAM_NAMES) {
    out[name] = clamp(params[name], regions[name].lo, regions[name].hi);
  }
  return out;
}

/** Vacuous defaults: the full interval for each counterfactual rate. */
export function vacuousParams(): SensitivityParamsJson {
  return { m_x: 0.0, M_x: 1.0, m_xp: 0.0, M_xp: 1.0 };
}

export interface SessionState {
  observed: ObservedJointJson | null;
  params: SensitivityParamsJson;
  resolution: number;
  weights: { w_benefit: number; w_harm: number };
  target: "benefit" | "harm";
  lastBounds: BoundsReport | null;
  lastSweepLower: SweepJson | null;
  lastSweepUpper: SweepJson | null;
  lastSocial: SocialReport | null;
}

export function initialState(): SessionState {
  return {
    observed: null,
    params: vacuousParams(),
    resolution: 101,
    weights: { w_benefit: 1.0, w_harm: 1.0 },
    target: "benefit",
    lastBounds: null,
    lastSweepLower: null,
    lastSweepUpper: null,
    lastSocial: null,
  };
}

/** Apply an edit and re-clamp against the current regions, if known. */
export function setParam(
  state: SessionState,
  name: ParamName,
  value: number,
): void {
  state.params = { ...state.params, [name]: value };
  if (state.lastBounds) {
    state.params = clampParams(state.params, state.lastBounds.possible_regions);
  }
}

/** The two axes swept for a target/side pair.
 *
 * Each bound side depends on exactly two of the four parameters; the
 * heatmap panels sweep those and pin the other two at the current
 * slider values.
 */
export function axesFor(
  target: "benefit" | "harm",
  side: "lower" | "upper",
): [ParamName, ParamName] {
  if (target === "benefit") {
    return side === "lower" ? ["m_x", "M_xp"] : ["M_x", "m_xp"];
  }
  return side === "lower" ? ["m_xp", "M_x"] : ["M_xp", "m_x"];
}

/** The fixed (non-axis) parameters for a sweep request. */
export function fixedFor(
  params: SensitivityParamsJson,
  axes: [ParamName, ParamName],
): Partial<SensitivityParamsJson> {
  const fixed: Partial<SensitivityParamsJson> = {};
  for (const name of PARAM_NAMES) {
    if (name !== axes[0] && name !== axes[1]) {
      fixed[name] = params[name];
    }
  }
  return fixed;
}

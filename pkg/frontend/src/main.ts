/** Explorer entry point: wires the DOM to the API client.
 *
 * One rendering flow per panel, each guarded by a LatestOnly ticket
 * and fed by debounced edits, so a burst of slider moves settles on
 * the final state regardless of response order.
 */

import {
  ApiClient,
  ApiError,
  LatestOnly,
  type BoundsReport,
  type IntervalJson,
  type ObservedJointJson,
  type SweepJson,
} from "./api.js";
import { debounce } from "./debounce.js";
import { gridFromJson, readoutAt, renderHeatmap } from "./heatmap.js";
import { renderCompliance, markerPositions } from "./compliance.js";
import {
  axesFor,
  fixedFor,
  initialState,
  setParam,
  PARAM_NAMES,
  type ParamName,
} from "./state.js";

const api = new ApiClient("");
const state = initialState();

const gates = {
  bounds: new LatestOnly(),
  sweepLower: new LatestOnly(),
  sweepUpper: new LatestOnly(),
  social: new LatestOnly(),
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const controls = el<HTMLFieldSetElement>("controls");
const obsInput = el<HTMLTextAreaElement>("obs-input");
const loadError = el<HTMLElement>("load-error");
const targetSelect = el<HTMLSelectElement>("target-select");
const resolutionSelect = el<HTMLSelectElement>("resolution-select");
const canvasLower = el<HTMLCanvasElement>("canvas-lower");
const canvasUpper = el<HTMLCanvasElement>("canvas-upper");
const readoutLower = el<HTMLElement>("readout-lower");
const readoutUpper = el<HTMLElement>("readout-upper");
const hoverLower = el<HTMLElement>("hover-lower");
const hoverUpper = el<HTMLElement>("hover-upper");
const regionLower = el<HTMLElement>("region-lower");
const socialCanvas = el<HTMLCanvasElement>("canvas-compliance");
const socialReadout = el<HTMLElement>("social-readout");
const socialNotice = el<HTMLElement>("social-notice");
const useAte = el<HTMLInputElement>("use-ate");

function fmt(value: number): string {
  return value.toFixed(4).replace(/0+$/, "").replace(/\.$/, ".0");
}

function fmtInterval(interval: IntervalJson): string {
  return `[${fmt(interval.lo)}, ${fmt(interval.hi)}]`;
}

function showError(target: HTMLElement, err: unknown): void {
  const text =
    err instanceof ApiError
      ? `${err.code}: ${err.message}`
      : err instanceof Error
        ? err.message
        : String(err);
  target.textContent = text;
  target.hidden = false;
}

function sliderFor(name: ParamName): HTMLInputElement {
  return el<HTMLInputElement>(`slider-${name}`);
}

function labelFor(name: ParamName): HTMLElement {
  return el<HTMLElement>(`label-${name}`);
}

function syncSliders(report: BoundsReport): void {
  for (const name of PARAM_NAMES) {
    const region = report.possible_regions[name];
    const slider = sliderFor(name);
    slider.min = String(region.lo);
    slider.max = String(region.hi);
    slider.step = "0.001";
    slider.value = String(state.params[name]);
    labelFor(name).textContent = fmt(state.params[name]);
  }
}

async function refreshBounds(): Promise<void> {
  const obs = state.observed;
  if (!obs) {
    return;
  }
  const report = await gates.bounds.run(() =>
    api.bounds({ obs, params: state.params, target: "both" }),
  );
  if (!report) {
    return;
  }
  state.lastBounds = report;
  syncSliders(report);

  const sensitivity = report.sensitivity;
  if (sensitivity) {
    const current = sensitivity[state.target].interval;
    readoutLower.textContent = `lower ${fmt(current.lo)}`;
    readoutUpper.textContent = `upper ${fmt(current.hi)}`;
    regionLower.hidden = current.lo > 0;
  }
}

async function refreshSweep(side: "lower" | "upper"): Promise<void> {
  const obs = state.observed;
  if (!obs) {
    return;
  }
  const axes = axesFor(state.target, side);
  const gate = side === "lower" ? gates.sweepLower : gates.sweepUpper;
  const sweep = await gate.run(() =>
    api.sweep({
      obs,
      target: state.target,
      side,
      axis1: axes[0],
      axis2: axes[1],
      fixed: fixedFor(state.params, axes),
      resolution: state.resolution,
    }),
  );
  if (!sweep) {
    return;
  }
  if (side === "lower") {
    state.lastSweepLower = sweep;
  } else {
    state.lastSweepUpper = sweep;
  }
  const canvas = side === "lower" ? canvasLower : canvasUpper;
  renderHeatmap(canvas, gridFromJson(sweep), {
    axis1: sweep.axis1,
    axis2: sweep.axis2,
    thresholds: sweep.thresholds,
    marker: {
      axis1: state.params[sweep.axis1 as ParamName],
      axis2: state.params[sweep.axis2 as ParamName],
    },
  });
}

async function refreshSocial(): Promise<void> {
  const report = state.lastBounds;
  if (!report || !report.sensitivity) {
    return;
  }
  const request = {
    benefit: plain(report.sensitivity["benefit"].interval),
    harm: plain(report.sensitivity["harm"].interval),
    weights: state.weights,
    ...(useAte.checked && report.ate ? { ate: plain(report.ate) } : {}),
  };
  try {
    const social = await gates.social.run(() => api.social(request));
    if (!social) {
      return;
    }
    state.lastSocial = social;
    socialNotice.hidden = true;
    renderCompliance(socialCanvas, social);
    const markers = markerPositions(social);
    const lines = [`naive ${fmtInterval(social.naive)}`];
    if (social.refined && markers) {
      lines.push(`refined ${fmtInterval(social.refined.interval)}`);
      lines.push(
        `worst at benefit ${fmt(markers.argmin.benefit)}, ` +
          `harm ${fmt(markers.argmin.harm)}`,
      );
      lines.push(
        `best at benefit ${fmt(markers.argmax.benefit)}, ` +
          `harm ${fmt(markers.argmax.harm)}`,
      );
    }
    socialReadout.textContent = lines.join(" | ");
  } catch (err) {
    if (err instanceof ApiError && err.code === "infeasible_region") {
      const ctx = socialCanvas.getContext("2d");
      ctx?.clearRect(0, 0, socialCanvas.width, socialCanvas.height);
      socialNotice.textContent =
        "empty region: no (benefit, harm) pair complies with the effect band";
      socialNotice.hidden = false;
      socialReadout.textContent = "";
    } else {
      showError(socialNotice, err);
    }
  }
}

function plain(interval: IntervalJson): IntervalJson {
  return { lo: interval.lo, hi: interval.hi };
}

async function refreshAll(): Promise<void> {
  await refreshBounds();
  await Promise.all([
    refreshSweep("lower"),
    refreshSweep("upper"),
    refreshSocial(),
  ]);
}

const queueRefresh = debounce(() => {
  refreshAll().catch((err) => showError(loadError, err));
}, 200);

function wireHover(
  canvas: HTMLCanvasElement,
  readout: HTMLElement,
  lastSweep: () => SweepJson | null,
): void {
  let cachedFor: SweepJson | null = null;
  let cachedGrid: ReturnType<typeof gridFromJson> | null = null;
  canvas.addEventListener("mousemove", (event) => {
    const sweep = lastSweep();
    if (!sweep) {
      return;
    }
    if (sweep !== cachedFor || !cachedGrid) {
      cachedFor = sweep;
      cachedGrid = gridFromJson(sweep);
    }
    const rect = canvas.getBoundingClientRect();
    const fracX = (event.clientX - rect.left) / rect.width;
    const fracY = 1 - (event.clientY - rect.top) / rect.height;
    const cell = readoutAt(cachedGrid, fracX, fracY);
    readout.textContent = cell.valid
      ? `${sweep.axis1}=${fmt(cell.axis1)} ${sweep.axis2}=${fmt(cell.axis2)} ` +
        `value ${fmt(cell.value)}`
      : `${sweep.axis1}=${fmt(cell.axis1)} ${sweep.axis2}=${fmt(cell.axis2)} ` +
        "outside the possible region";
  });
  canvas.addEventListener("mouseleave", () => {
    readout.textContent = "";
  });
}

function loadDistribution(): void {
  loadError.hidden = true;
  let obs: ObservedJointJson;
  try {
    obs = JSON.parse(obsInput.value);
  } catch (err) {
    showError(loadError, new Error("observed distribution is not valid JSON"));
    return;
  }
  state.observed = obs;
  api
    .bounds({ obs })
    .then((report) => {
      state.lastBounds = report;
      // start from the vacuous corners of the possible regions
      state.params = {
        m_x: report.possible_regions.m_x.lo,
        M_x: report.possible_regions.M_x.hi,
        m_xp: report.possible_regions.m_xp.lo,
        M_xp: report.possible_regions.M_xp.hi,
      };
      syncSliders(report);
      controls.disabled = false;
      queueRefresh();
    })
    .catch((err) => {
      state.observed = null;
      controls.disabled = true;
      showError(loadError, err);
    });
}

export function wire(): void {
  el<HTMLButtonElement>("load-btn").addEventListener("click", loadDistribution);

  for (const name of PARAM_NAMES) {
    const slider = sliderFor(name);
    slider.addEventListener("input", () => {
      setParam(state, name, Number(slider.value));
      labelFor(name).textContent = fmt(state.params[name]);
      queueRefresh();
    });
  }

  targetSelect.addEventListener("change", () => {
    state.target = targetSelect.value === "harm" ? "harm" : "benefit";
    queueRefresh();
  });
  resolutionSelect.addEventListener("change", () => {
    state.resolution = Number(resolutionSelect.value);
    queueRefresh();
  });

  for (const name of ["w_benefit", "w_harm"] as const) {
    const slider = el<HTMLInputElement>(`slider-${name}`);
    slider.addEventListener("input", () => {
      state.weights = { ...state.weights, [name]: Number(slider.value) };
      el<HTMLElement>(`label-${name}`).textContent = fmt(Number(slider.value));
      queueRefresh();
    });
  }
  useAte.addEventListener("change", queueRefresh);

  wireHover(canvasLower, hoverLower, () => state.lastSweepLower);
  wireHover(canvasUpper, hoverUpper, () => state.lastSweepUpper);

  api
    .health()
    .then((health) => {
      el<HTMLElement>("health").textContent =
        `service ${health.status}, version ${health.version}`;
    })
    .catch(() => {
      el<HTMLElement>("health").textContent = "service unreachable";
    });
}

if (typeof document !== "undefined" && document.getElementById("controls")) {
  wire();
}

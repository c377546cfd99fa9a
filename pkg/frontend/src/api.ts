/** Typed client for the counterbound HTTP JSON API.
 *
 * Every number the explorer renders comes through this module; the UI
 * does no bound arithmetic of its own. Errors arrive as HTTP 400 with
 * a JSON body naming a machine-readable code, surfaced here as
 * ApiError so panels can branch on the code (for example
 * "infeasible_region").
 */

export interface IntervalJson {
  lo: number;
  hi: number;
  kind?: string;
}

export interface ObservedJointJson {
  pxy: number;
  pxy_: number;
  px_y: number;
  px_y_: number;
}

export interface SensitivityParamsJson {
  m_x: number;
  M_x: number;
  m_xp: number;
  M_xp: number;
}

export interface BoundResultJson {
  interval: IntervalJson;
  lower_active: string[];
  upper_active: string[];
  lower_rows: Record<string, number>;
  upper_rows: Record<string, number>;
  rules_fired: string[];
}

export interface InformativeRegionsJson {
  target: string;
  m_param: string;
  M_param: string;
  p_y_exposed: number;
  p_y_unexposed: number;
  lower_m_interval: [number, number] | null;
  lower_M_interval: [number, number] | null;
  upper_strict: boolean;
  upper_equals_possible: boolean;
}

export interface BoundsReport {
  observed: ObservedJointJson;
  margins: {
    p_x: number;
    p_y: number;
    p_y_given_x: number;
    p_y_given_xp: number;
  };
  possible_regions: Record<keyof SensitivityParamsJson, IntervalJson>;
  envelope: Record<string, BoundResultJson>;
  informative_regions: Record<string, InformativeRegionsJson>;
  params: SensitivityParamsJson | null;
  counterfactual_intervals?: { p_yx: IntervalJson; p_yxp: IntervalJson };
  sensitivity?: Record<string, BoundResultJson>;
  ate?: IntervalJson;
  pn_ps?: { pn: IntervalJson; ps: IntervalJson } | null;
  pn_ps_unavailable?: string;
}

export interface ThresholdLine {
  param: string;
  value: number;
  label: string;
}

export interface SweepJson {
  target: string;
  side: string;
  axis1: string;
  axis2: string;
  resolution: number;
  grid1: number[];
  grid2: number[];
  values: (number | null)[][];
  valid: boolean[][];
  thresholds: ThresholdLine[];
}

export interface PolicyPointJson {
  benefit: number;
  harm: number;
}

export interface SocialReport {
  weights: { w_benefit: number; w_harm: number };
  benefit: IntervalJson;
  harm: IntervalJson;
  ate: IntervalJson | null;
  naive: IntervalJson;
  refined: {
    interval: IntervalJson;
    argmin: PolicyPointJson;
    argmax: PolicyPointJson;
  } | null;
  compliance_region: { harm: number; benefit: number }[] | null;
}

export interface BoundsRequest {
  obs: ObservedJointJson;
  params?: SensitivityParamsJson;
  target?: string;
}

export interface SweepRequest {
  obs: ObservedJointJson;
  target: string;
  side: string;
  axis1: string;
  axis2: string;
  fixed?: Partial<SensitivityParamsJson>;
  resolution?: number;
  format?: "json" | "csv";
}

export interface SocialRequest {
  benefit: IntervalJson;
  harm: IntervalJson;
  ate?: IntervalJson;
  weights: { w_benefit: number; w_harm: number };
}

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
  }
}

async function readError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") {
      code = body.error;
      message = typeof body.message === "string" ? body.message : message;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(code, message, response.status);
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw await readError(response);
    }
    return (await response.json()) as T;
  }

  async health(): Promise<{ status: string; version: string }> {
    const response = await fetch(this.base + "/api/health");
    if (!response.ok) {
      throw await readError(response);
    }
    return await response.json();
  }

  bounds(request: BoundsRequest): Promise<BoundsReport> {
    return this.post("/api/bounds", request);
  }

  sweep(request: SweepRequest): Promise<SweepJson> {
    return this.post("/api/sweep", { ...request, format: "json" });
  }

  async sweepCsv(request: SweepRequest): Promise<string> {
    const response = await fetch(this.base + "/api/sweep", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ ...request, format: "csv" }),
    });
    if (!response.ok) {
      throw await readError(response);
    }
    return await response.text();
  }

  social(request: SocialRequest): Promise<SocialReport> {
    return this.post("/api/social", request);
  }
}

/** Serialize panel refreshes so only the newest response lands.
 *
 * Each call gets a sequence number; when a response comes back it is
 * dropped unless its number is still the latest. Panels keep one
 * instance each, so a burst of slider edits ends with exactly the
 * final state rendered no matter how the fetches interleave.
 */
export class LatestOnly {
  private seq = 0;

  async run<T>(fetcher: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.seq;
    const result = await fetcher();
    return ticket === this.seq ? result : undefined;
  }

  /** True when a run started after the given ticket. */
  get current(): number {
    return this.seq;
  }
}

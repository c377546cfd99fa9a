/** Canvas heatmap for one bound side over two sensitivity parameters.
 *
 * Cells outside the possible region render in a neutral gray so the
 * region boundary is visible; the dashed threshold lines mark both
 * observed outcome rates on each axis (the informative-region edges);
 * a movable marker shows the current slider position. Cell values are
 * taken verbatim from the sweep payload: this module colors and
 * reports numbers, it never computes bounds.
 */

import type { SweepJson, ThresholdLine } from "./api.js";
import type { SweepGrid } from "./csv.js";

export const INVALID_COLOR = "#d4d4d4";

/** Convert the JSON sweep payload to the dense grid the renderer uses. */
export function gridFromJson(sweep: SweepJson): SweepGrid {
  return {
    grid1: sweep.grid1,
    grid2: sweep.grid2,
    values: sweep.values.map((row) =>
      row.map((v) => (v === null ? NaN : v)),
    ),
    valid: sweep.valid,
  };
}

export interface CellReadout {
  axis1: number;
  axis2: number;
  value: number;
  valid: boolean;
}

/** The exact stored cell content, used by the marker readout. */
export function cellReadout(grid: SweepGrid, i: number, j: number): CellReadout {
  if (i < 0 || i >= grid.grid1.length || j < 0 || j >= grid.grid2.length) {
    throw new RangeError(`cell (${i}, ${j}) outside the sweep grid`);
  }
  return {
    axis1: grid.grid1[i],
    axis2: grid.grid2[j],
    value: grid.values[i][j],
    valid: grid.valid[i][j],
  };
}

/** Index of the grid value nearest to a parameter coordinate. */
export function nearestIndex(gridValues: number[], coord: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (let k = 0; k < gridValues.length; k++) {
    const dist = Math.abs(gridValues[k] - coord);
    if (dist < bestDist) {
      best = k;
      bestDist = dist;
    }
  }
  return best;
}

/** The readout under a marker at parameter coordinates. */
export function readoutAt(
  grid: SweepGrid,
  coord1: number,
  coord2: number,
): CellReadout {
  return cellReadout(
    grid,
    nearestIndex(grid.grid1, coord1),
    nearestIndex(grid.grid2, coord2),
  );
}

/** Range of the valid cell values, for the color scale. */
export function valueRange(grid: SweepGrid): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (let i = 0; i < grid.values.length; i++) {
    for (let j = 0; j < grid.values[i].length; j++) {
      if (!grid.valid[i][j]) {
        continue;
      }
      const v = grid.values[i][j];
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo > hi) {
    return [0, 1];
  }
  return [lo, hi];
}

const LOW_RGB = [29, 53, 87];
const HIGH_RGB = [244, 211, 94];

/** Linear two-stop color ramp; invalid cells get the neutral color. */
export function colorFor(
  value: number,
  lo: number,
  hi: number,
  valid: boolean,
): string {
  if (!valid || Number.isNaN(value)) {
    return INVALID_COLOR;
  }
  const t = hi > lo ? Math.min(1, Math.max(0, (value - lo) / (hi - lo))) : 0.5;
  const rgb = LOW_RGB.map((low, k) =>
    Math.round(low + t * (HIGH_RGB[k] - low)),
  );
  return `rgb(${rgb[0]}, ${rgb[1]}, ${rgb[2]})`;
}

export interface HeatmapOptions {
  thresholds: ThresholdLine[];
  axis1: string;
  axis2: string;
  marker?: { axis1: number; axis2: number } | null;
}

/** Paint the grid: axis1 runs along x, axis2 along y (upward). */
export function renderHeatmap(
  canvas: HTMLCanvasElement,
  grid: SweepGrid,
  options: HeatmapOptions,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  const n1 = grid.grid1.length;
  const n2 = grid.grid2.length;
  const width = canvas.width;
  const height = canvas.height;
  const cellW = width / n1;
  const cellH = height / n2;
  const [lo, hi] = valueRange(grid);

  ctx.clearRect(0, 0, width, height);
  for (let i = 0; i < n1; i++) {
    for (let j = 0; j < n2; j++) {
      ctx.fillStyle = colorFor(grid.values[i][j], lo, hi, grid.valid[i][j]);
      // y flipped so axis2 grows upward like the published plots
      ctx.fillRect(
        Math.floor(i * cellW),
        Math.floor(height - (j + 1) * cellH),
        Math.ceil(cellW),
        Math.ceil(cellH),
      );
    }
  }

  ctx.save();
  ctx.setLineDash([6, 4]);
  ctx.strokeStyle = "#ffffff";
  ctx.lineWidth = 1.5;
  for (const line of options.thresholds) {
    ctx.beginPath();
    if (line.param === options.axis1) {
      const x = line.value * width;
      ctx.moveTo(x, 0);
      ctx.lineTo(x, height);
    } else if (line.param === options.axis2) {
      const y = height - line.value * height;
      ctx.moveTo(0, y);
      ctx.lineTo(width, y);
    } else {
      continue;
    }
    ctx.stroke();
  }
  ctx.restore();

  if (options.marker) {
    const x = options.marker.axis1 * width;
    const y = height - options.marker.axis2 * height;
    ctx.save();
    ctx.beginPath();
    ctx.arc(x, y, 5, 0, 2 * Math.PI);
    ctx.fillStyle = "#e63946";
    ctx.fill();
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.restore();
  }
}

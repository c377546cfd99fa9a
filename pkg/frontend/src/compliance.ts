/** Compliance panel: the (harm, benefit) box, the effect band cut
 * through it, and the social-good extremes.
 *
 * Everything drawn comes from the social endpoint payload: the
 * polygon vertices, the argmin/argmax corners, and the refined
 * interval. The panel adds geometry (scales, padding), not arithmetic.
 */

import type { PolicyPointJson, SocialReport } from "./api.js";

export interface MarkerPositions {
  argmin: PolicyPointJson;
  argmax: PolicyPointJson;
}

/** Marker coordinates straight from the payload.
 *
 * Exists as a named seam so the parity audit can pin the rendered
 * marker positions to the service's argmin/argmax.
 */
export function markerPositions(social: SocialReport): MarkerPositions | null {
  if (!social.refined) {
    return null;
  }
  return {
    argmin: social.refined.argmin,
    argmax: social.refined.argmax,
  };
}

/** Linear data-to-pixel scales over the padded (harm, benefit) box. */
export interface PanelScales {
  x: (harm: number) => number;
  y: (benefit: number) => number;
}

export function panelScales(
  social: SocialReport,
  width: number,
  height: number,
  pad = 30,
): PanelScales {
  const hLo = social.harm.lo;
  const hHi = social.harm.hi;
  const bLo = social.benefit.lo;
  const bHi = social.benefit.hi;
  const hSpan = hHi > hLo ? hHi - hLo : 1;
  const bSpan = bHi > bLo ? bHi - bLo : 1;
  return {
    x: (harm) => pad + ((harm - hLo) / hSpan) * (width - 2 * pad),
    y: (benefit) => height - pad - ((benefit - bLo) / bSpan) * (height - 2 * pad),
  };
}

export function renderCompliance(
  canvas: HTMLCanvasElement,
  social: SocialReport,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  const width = canvas.width;
  const height = canvas.height;
  const scales = panelScales(social, width, height);
  ctx.clearRect(0, 0, width, height);

  // the full (harm, benefit) box
  ctx.strokeStyle = "#457b9d";
  ctx.lineWidth = 1.5;
  ctx.strokeRect(
    scales.x(social.harm.lo),
    scales.y(social.benefit.hi),
    scales.x(social.harm.hi) - scales.x(social.harm.lo),
    scales.y(social.benefit.lo) - scales.y(social.benefit.hi),
  );

  // the compliant part of the box, as sent by the service
  if (social.compliance_region && social.compliance_region.length > 0) {
    ctx.beginPath();
    const [first, ...rest] = social.compliance_region;
    ctx.moveTo(scales.x(first.harm), scales.y(first.benefit));
    for (const vertex of rest) {
      ctx.lineTo(scales.x(vertex.harm), scales.y(vertex.benefit));
    }
    ctx.closePath();
    ctx.fillStyle = "rgba(69, 123, 157, 0.35)";
    ctx.fill();
    ctx.strokeStyle = "#1d3557";
    ctx.stroke();
  }

  // effect band edges: benefit = harm + lo and benefit = harm + hi
  if (social.ate) {
    ctx.save();
    ctx.setLineDash([6, 4]);
    ctx.strokeStyle = "#6c757d";
    for (const edge of [social.ate.lo, social.ate.hi]) {
      ctx.beginPath();
      ctx.moveTo(scales.x(social.harm.lo), scales.y(social.harm.lo + edge));
      ctx.lineTo(scales.x(social.harm.hi), scales.y(social.harm.hi + edge));
      ctx.stroke();
    }
    ctx.restore();
  }

  const markers = markerPositions(social);
  if (markers) {
    drawMarker(ctx, scales, markers.argmin, "#e63946");
    drawMarker(ctx, scales, markers.argmax, "#2a9d8f");
  }
}

function drawMarker(
  ctx: CanvasRenderingContext2D,
  scales: PanelScales,
  point: PolicyPointJson,
  color: string,
): void {
  ctx.save();
  ctx.beginPath();
  ctx.arc(scales.x(point.harm), scales.y(point.benefit), 6, 0, 2 * Math.PI);
  ctx.fillStyle = color;
  ctx.fill();
  ctx.strokeStyle = "#ffffff";
  ctx.lineWidth = 1.5;
  ctx.stroke();
  ctx.restore();
}

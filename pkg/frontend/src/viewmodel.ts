// View models: what the editors display, derived verbatim from the last
// API response. Numbers are rendered with String(...) so the screen shows
// exactly what the server computed — no client-side recomputation.

import type {
  ConsistencyViolation,
  FunctionDoc,
  ScaleResponse,
  WeightsResponse,
} from "./types.js";

export interface ScaleView {
  unitValue: string;
  unitCount: string;
  levelValues: { level: string; value: string }[];
  capOnset: string;
}

export function scaleView(levels: number[], response: ScaleResponse): ScaleView {
  return {
    unitValue: String(response.scale.unit_value),
    unitCount: String(response.scale.unit_count),
    levelValues: levels.map((level, i) => ({
      level: String(level),
      value: String(response.scale.values[i]),
    })),
    capOnset:
      response.function.cap_onset === null
        ? "never"
        : String(response.function.cap_onset),
  };
}

export interface WeightsView {
  byCriterion: { criterion: string; weight: string }[];
}

const CRITERION_LABELS = ["incid", "trans", "letha", "wards", "icu"];

export function weightsView(response: WeightsResponse): WeightsView {
  return {
    byCriterion: response.weights.map((w, i) => ({
      criterion: CRITERION_LABELS[i] ?? `c${i}`,
      weight: String(w),
    })),
  };
}

export interface PlotGeometry {
  width: number;
  height: number;
  points: string;      // SVG polyline through the breakpoints
  capLineY: number;    // horizontal saturation line
  nodes: { x: number; y: number }[];
}

/** Scale server breakpoints into an SVG viewport (presentation only). */
export function plotGeometry(
  fn: FunctionDoc,
  width = 560,
  height = 320,
  pad = 24,
): PlotGeometry {
  const xs = fn.breakpoints.map(([x]) => x);
  const onset = fn.cap_onset;
  const xMax = Math.max(...xs, onset ?? 0) * 1.15 || 1;
  const yMax = fn.cap * 1.1;
  const toX = (x: number) => pad + (x / xMax) * (width - 2 * pad);
  const toY = (v: number) => height - pad - (v / yMax) * (height - 2 * pad);
  const pts: [number, number][] = fn.breakpoints.map(([x, v]) => [toX(x), toY(v)]);
  if (onset !== null) {
    pts.push([toX(xMax), toY(fn.cap)]);
  }
  return {
    width,
    height,
    points: pts.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" "),
    capLineY: toY(fn.cap),
    nodes: fn.breakpoints.map(([x, v]) => ({ x: toX(x), y: toY(v) })),
  };
}

export interface GapBadge {
  gapIndex: number;
  text: string;
}

/**
 * Map server consistency violations onto gap badges. A violation on pair
 * (i, j) is anchored at the first gap it spans, with its residual shown.
 */
export function violationBadges(violations: ConsistencyViolation[]): GapBadge[] {
  return violations.map((v) => ({
    gapIndex: v.pair[0],
    text: `pair ${v.pair[0]}–${v.pair[1]}: expected ${v.expected}, ` +
      `got ${v.actual} (residual ${v.residual > 0 ? "+" : ""}${v.residual})`,
  }));
}

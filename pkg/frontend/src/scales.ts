/** Color scales, value normalization, and axis helpers shared by the views. */

export function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), hi);
}

/** Normalize a bin value into [0, 1] against the window extremes. */
export function valueToUnit(
  value: number,
  min: number | null,
  max: number | null,
): number {
  if (min === null || max === null) return 0;
  if (!(max > min)) return 0.5;
  return clamp((value - min) / (max - min), 0, 1);
}

/** Sequential scale for heat-map cells: dark blue up to warm yellow. */
export function sequentialColor(t: number): string {
  const u = clamp(t, 0, 1);
  const hue = 240 - 185 * u;
  const light = 18 + 52 * u;
  return `hsl(${hue.toFixed(2)}, 85%, ${light.toFixed(2)}%)`;
}

/** Cyclical rainbow scale: u=0 and u->1 meet at the same hue. */
export function cyclicColor(u: number): string {
  const hue = ((u % 1) + 1) % 1 * 360;
  return `hsl(${hue.toFixed(2)}, 80%, 55%)`;
}

/**
 * Sequential scale over the phase parameter with a deliberate seam at u=0,
 * for datasets where the period has a meaningful start.
 */
export function cutColor(u: number): string {
  const v = clamp(u, 0, 1);
  const hue = 250 - 250 * v;
  const light = 30 + 35 * v;
  return `hsl(${hue.toFixed(2)}, 75%, ${light.toFixed(2)}%)`;
}

/** Position of tau on a logarithmic axis over [lower, upper], in [0, 1]. */
export function tauToSliderPos(tau: number, lower: number, upper: number): number {
  if (!(upper > lower) || lower <= 0) return 0;
  const pos = (Math.log(tau) - Math.log(lower)) / (Math.log(upper) - Math.log(lower));
  return clamp(pos, 0, 1);
}

/** Inverse of tauToSliderPos; out-of-range positions clamp to the ends. */
export function sliderPosToTau(pos: number, lower: number, upper: number): number {
  if (!(upper > lower) || lower <= 0) return lower;
  const p = clamp(pos, 0, 1);
  // Exact bounds at the ends; exp(log(x)) round trips are one ulp off.
  if (p === 0) return lower;
  if (p === 1) return upper;
  return Math.exp(Math.log(lower) + p * (Math.log(upper) - Math.log(lower)));
}

const MINUTE = 60;
const HOUR = 3600;
const DAY = 86400;
const YEAR = 365.25 * DAY;

const UNITS: Array<[string, number]> = [
  ["y", YEAR],
  ["d", DAY],
  ["h", HOUR],
  ["min", MINUTE],
];

/** Render seconds with the largest unit that keeps the value >= 1. */
export function formatDuration(seconds: number): string {
  for (const [unit, scale] of UNITS) {
    if (Math.abs(seconds) >= scale) {
      return `${trimmed(seconds / scale)} ${unit}`;
    }
  }
  return `${trimmed(seconds)} s`;
}

// Four significant digits with trailing zeros dropped, like printf %.4g.
function trimmed(value: number): string {
  return String(Number(value.toPrecision(4)));
}

/**
 * Shape generators for the phase parameter u in [0, 1).
 *
 * Each generator returns an SVG path string centered on the origin so
 * callers position marks with a transform. The moon and rectangle are
 * cyclic (u=0 renders like u->1); the star morph is deliberately not.
 */

const TWO_PI = Math.PI * 2;

function fmt(value: number): string {
  // Fixed precision keeps paths stable for tests and diffs.
  const text = value.toFixed(3);
  return text === "-0.000" ? "0.000" : text;
}

/** Rotation of the rectangle glyph in degrees: u maps to [0, 180). */
export function rectangleAngleDeg(u: number): number {
  return (((u % 1) + 1) % 1) * 180;
}

/** Axis-aligned rectangle path; rotate it by rectangleAngleDeg(u). */
export function rectanglePath(r: number): string {
  const w = r;
  const h = r * 0.38;
  return `M ${fmt(-w)} ${fmt(-h)} H ${fmt(w)} V ${fmt(h)} H ${fmt(-w)} Z`;
}

/**
 * Moon-phase glyph: a disc whose lit portion follows u through new, first
 * quarter, full, and last quarter. The terminator is half an ellipse whose
 * width runs on cos(2*pi*u), so the shape is cyclic by construction.
 */
export function moonPath(u: number, r: number): string {
  const phase = (((u % 1) + 1) % 1) * TWO_PI;
  const k = Math.cos(phase);
  const rx = Math.abs(k) * r;
  // Right half of the disc, then back along the terminator curve. The
  // sweep flag flips as the terminator crosses the center line.
  const sweep = k >= 0 ? 0 : 1;
  return (
    `M 0 ${fmt(-r)} ` +
    `A ${fmt(r)} ${fmt(r)} 0 0 1 0 ${fmt(r)} ` +
    `A ${fmt(rx)} ${fmt(r)} 0 0 ${sweep} 0 ${fmt(-r)} Z`
  );
}

/**
 * Star that morphs into a circle as u grows: the inner vertices move
 * outward until the outline is a regular polygon indistinguishable from
 * a disc. Acyclic on purpose; u=0 and u->1 look maximally different.
 */
export function starMorphPath(u: number, r: number, points = 5): string {
  const v = Math.min(Math.max(u, 0), 1);
  const inner = r * (0.42 + 0.58 * v);
  const step = Math.PI / points;
  const parts: string[] = [];
  for (let i = 0; i < points * 2; i++) {
    const radius = i % 2 === 0 ? r : inner;
    const angle = -Math.PI / 2 + i * step;
    const x = radius * Math.cos(angle);
    const y = radius * Math.sin(angle);
    parts.push(`${i === 0 ? "M" : "L"} ${fmt(x)} ${fmt(y)}`);
  }
  parts.push("Z");
  return parts.join(" ");
}

/** Inner vertex radius used by starMorphPath, exposed for tests. */
export function starInnerRadius(u: number, r: number): number {
  const v = Math.min(Math.max(u, 0), 1);
  return r * (0.42 + 0.58 * v);
}

import { clearChildren, svgEl } from "./dom.js";
import { moonPath, rectangleAngleDeg, rectanglePath, starMorphPath } from "./glyphs.js";
import { cutColor, cyclicColor } from "./scales.js";
import type { MappingKind, PhasesPayload } from "./types.js";

export interface ScatterProps {
  phases: PhasesPayload;
  mapping: MappingKind;
  /** Numeric attribute columns for the axes; time and order by default. */
  xField?: string;
  yField?: string;
  width?: number;
  height?: number;
  markRadius?: number;
}

function numericColumn(
  phases: PhasesPayload,
  field: string | undefined,
): number[] | null {
  if (!field) return null;
  const column = phases.attributes[field];
  if (!column) return null;
  const values = column.map((v) => (typeof v === "number" ? v : NaN));
  return values.some((v) => Number.isFinite(v)) ? values : null;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(hi > lo)) return [lo, lo + 1];
  return [lo, hi];
}

/**
 * Scatter plot of the events with the phase parameter u encoded per mark.
 *
 * Color mappings fill plain dots; shape mappings draw the moon, rotated
 * rectangle, or star-morph glyph. Axes default to event time against
 * event order when no attribute columns are configured, mirroring the
 * fallback for datasets without positional fields.
 */
export function renderScatter(host: HTMLElement, props: ScatterProps): void {
  const { phases, mapping } = props;
  const width = props.width ?? 320;
  const height = props.height ?? 220;
  const r = props.markRadius ?? 5;
  const pad = r + 2;

  const xs = numericColumn(phases, props.xField) ?? phases.t;
  const fallbackY = phases.t.map((_, i) => i);
  const ys = numericColumn(phases, props.yField) ?? fallbackY;
  const [xLo, xHi] = extent(xs);
  const [yLo, yHi] = extent(ys);
  const px = (x: number) => pad + ((x - xLo) / (xHi - xLo)) * (width - 2 * pad);
  const py = (y: number) => height - pad - ((y - yLo) / (yHi - yLo)) * (height - 2 * pad);

  clearChildren(host);
  const svg = svgEl("svg", {
    class: "pf-scatter",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    "data-mapping": mapping,
    "data-offset": phases.offset,
    "data-tau": phases.tau,
  });

  phases.u.forEach((u, i) => {
    const x = px(xs[i]);
    const y = py(ys[i]);
    if (!Number.isFinite(x) || !Number.isFinite(y)) return;
    if (mapping === "cyclic-color" || mapping === "cut-color") {
      const fill = mapping === "cyclic-color" ? cyclicColor(u) : cutColor(u);
      svgEl(
        "circle",
        { class: "pf-mark", cx: x, cy: y, r, fill, "data-u": u, "data-index": i },
        svg,
      );
      return;
    }
    let d: string;
    let rotate = 0;
    if (mapping === "moon") {
      d = moonPath(u, r);
    } else if (mapping === "rotated-rectangle") {
      d = rectanglePath(r);
      rotate = rectangleAngleDeg(u);
    } else {
      d = starMorphPath(u, r);
    }
    svgEl(
      "path",
      {
        class: "pf-mark",
        d,
        fill: "#e8e8e8",
        transform: `translate(${x} ${y}) rotate(${rotate})`,
        "data-u": u,
        "data-index": i,
      },
      svg,
    );
  });

  host.appendChild(svg);
}

import { clearChildren, htmlEl, svgEl } from "./dom.js";
import { formatDuration, sequentialColor, valueToUnit } from "./scales.js";
import type { DetailPayload } from "./types.js";

export interface DetailProps {
  detail: DetailPayload;
  cellSize?: number;
  spiralSize?: number;
}

function valueRange(detail: DetailPayload): [number | null, number | null] {
  let lo: number | null = null;
  let hi: number | null = null;
  for (const row of detail.values) {
    for (const v of row) {
      if (v === null) continue;
      if (lo === null || v < lo) lo = v;
      if (hi === null || v > hi) hi = v;
    }
  }
  return [lo, hi];
}

/**
 * Period-by-period drill-down of one period length, shown two ways from
 * the same matrix: a rectangular grid with one row per elapsed period,
 * and an Archimedean spiral where one turn is one period. Cell (r, c)
 * sits at angle 2*pi*c/N and radius growing with r + c/N, so consecutive
 * periods wind outward without a seam.
 */
export function renderDetail(host: HTMLElement, props: DetailProps): void {
  const { detail } = props;
  const cell = props.cellSize ?? 6;
  const spiralSize = props.spiralSize ?? 160;
  const [lo, hi] = valueRange(detail);

  clearChildren(host);
  const box = htmlEl("div", "pf-detail", host);
  const caption = htmlEl("div", "pf-detail-caption", box);
  caption.textContent = `${detail.row_count} periods of ${formatDuration(detail.tau)}`;

  // Rectangular form: rows top to bottom, bins left to right.
  const gridWidth = detail.bin_count * cell;
  const gridHeight = detail.row_count * cell;
  const rect = svgEl("svg", {
    class: "pf-detail-rect",
    width: gridWidth,
    height: gridHeight,
    viewBox: `0 0 ${gridWidth} ${gridHeight}`,
  });
  detail.values.forEach((row, r) => {
    row.forEach((value, c) => {
      const attrs: Record<string, string | number> = {
        x: c * cell,
        y: r * cell,
        width: cell,
        height: cell,
        "data-row": r,
        "data-bin": c,
        "data-count": detail.counts[r][c],
      };
      if (value === null) {
        attrs.fill = "#3a3a3a";
      } else {
        attrs.fill = sequentialColor(valueToUnit(value, lo, hi));
        attrs["data-value"] = value;
      }
      svgEl("rect", attrs, rect);
    });
  });
  box.appendChild(rect);

  // Spiral form of the same matrix.
  const center = spiralSize / 2;
  const innerRadius = spiralSize * 0.06;
  const ringStep = detail.row_count
    ? (center - innerRadius - 4) / detail.row_count
    : 1;
  const dotRadius = Math.max(1.2, Math.min(cell * 0.45, ringStep * 0.45));
  const spiral = svgEl("svg", {
    class: "pf-detail-spiral",
    width: spiralSize,
    height: spiralSize,
    viewBox: `0 0 ${spiralSize} ${spiralSize}`,
  });
  detail.values.forEach((row, r) => {
    row.forEach((value, c) => {
      const turns = c / detail.bin_count;
      const angle = 2 * Math.PI * turns - Math.PI / 2;
      const radius = innerRadius + ringStep * (r + turns);
      const attrs: Record<string, string | number> = {
        cx: center + radius * Math.cos(angle),
        cy: center + radius * Math.sin(angle),
        r: dotRadius,
        "data-row": r,
        "data-bin": c,
        "data-count": detail.counts[r][c],
        "data-radius": radius,
      };
      attrs.fill = value === null ? "#3a3a3a" : sequentialColor(valueToUnit(value, lo, hi));
      svgEl("circle", attrs, spiral);
    });
  });
  box.appendChild(spiral);
}

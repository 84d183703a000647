import { clearChildren, svgEl } from "./dom.js";
import { measureScore } from "./measures.js";
import { formatDuration, sequentialColor, valueToUnit } from "./scales.js";
import type { MeasureName, WindowPayload } from "./types.js";

export interface HeatmapProps {
  window: WindowPayload;
  measure: MeasureName;
  width?: number;
  height?: number;
  /** One wheel notch: +1 toward longer periods, -1 toward shorter. */
  onStep?: (direction: 1 | -1) => void;
  onRowClick?: (tau: number) => void;
  /** Fires with a tau on row enter and null on leave, for the detail tooltip. */
  onRowHover?: (tau: number | null) => void;
}

const QUALITY_GUTTER = 0.22;
const EMPTY_FILL = "#3a3a3a";

/**
 * Pixel view of the period neighborhood: one row per period length in
 * ascending order, one colored rectangle per phase bin, the current row
 * framed at the center, and a quality bar per row in a right gutter.
 *
 * Cell colors normalize against the window-wide extremes the server
 * reports, so rows are comparable with each other.
 */
export function renderHeatmap(host: HTMLElement, props: HeatmapProps): void {
  const { window: win, measure } = props;
  const width = props.width ?? 360;
  const height = props.height ?? 240;
  const rows = win.rows;
  const binCount = win.bin_count;
  const mapWidth = width * (1 - QUALITY_GUTTER);
  const rowHeight = rows.length ? height / rows.length : height;
  const cellWidth = binCount ? mapWidth / binCount : mapWidth;

  clearChildren(host);
  const svg = svgEl("svg", {
    class: "pf-heatmap",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
  });
  svg.addEventListener("wheel", (event: WheelEvent) => {
    event.preventDefault();
    if (!props.onStep || event.deltaY === 0) return;
    props.onStep(event.deltaY > 0 ? 1 : -1);
  });

  rows.forEach((row, index) => {
    const group = svgEl(
      "g",
      {
        class: index === win.center_index ? "pf-row pf-center" : "pf-row",
        "data-tau": row.tau,
        "data-provenance": row.provenance,
      },
      svg,
    );
    const y = index * rowHeight;
    row.bins.forEach((value, bin) => {
      const attrs: Record<string, string | number> = {
        class: "pf-cell",
        x: bin * cellWidth,
        y,
        width: cellWidth,
        height: rowHeight,
        "data-bin": bin,
        "data-count": row.counts[bin],
      };
      if (value === null) {
        attrs.fill = EMPTY_FILL;
        attrs["data-empty"] = "1";
      } else {
        attrs.fill = sequentialColor(valueToUnit(value, win.value_min, win.value_max));
        attrs["data-value"] = value;
      }
      svgEl("rect", attrs, group);
    });

    const score = measureScore(row.measures, measure);
    svgEl(
      "rect",
      {
        class: "pf-quality",
        x: mapWidth + 2,
        y: y + rowHeight * 0.12,
        width: Math.max(0, (width - mapWidth - 4) * score),
        height: rowHeight * 0.76,
        "data-tau": row.tau,
        "data-score": score,
        fill: "#888",
      },
      group,
    );

    group.addEventListener("click", () => props.onRowClick?.(row.tau));
    group.addEventListener("mouseenter", () => props.onRowHover?.(row.tau));
    group.addEventListener("mouseleave", () => props.onRowHover?.(null));
  });

  // Frame the current row last so the stroke sits above the cells.
  if (rows.length) {
    svgEl(
      "rect",
      {
        class: "pf-center-frame",
        x: 0,
        y: win.center_index * rowHeight,
        width: mapWidth,
        height: rowHeight,
        fill: "none",
        stroke: "#fff",
        "stroke-width": 1.5,
        "data-tau": win.tau,
      },
      svg,
    );
  }

  svg.setAttribute("aria-label", `period neighborhood around ${formatDuration(win.tau)}`);
  host.appendChild(svg);
}

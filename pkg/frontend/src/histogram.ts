import { clearChildren, svgEl } from "./dom.js";
import { formatDuration } from "./scales.js";
import type { WindowRow } from "./types.js";

export interface HistogramProps {
  row: WindowRow;
  /** Window-wide maximum so the bar heights share the heat map's scale. */
  valueMax: number | null;
  width?: number;
  height?: number;
}

/**
 * Bar-chart restatement of the current period's histogram: the same
 * numbers as the heat map's center row, bin by bin.
 */
export function renderHistogram(host: HTMLElement, props: HistogramProps): void {
  const { row } = props;
  const width = props.width ?? 360;
  const height = props.height ?? 80;
  const bins = row.bins;
  const barWidth = bins.length ? width / bins.length : width;
  const counts = row.counts;
  const countMax = counts.reduce((a, b) => Math.max(a, b), 0);
  const valueMax = props.valueMax;

  clearChildren(host);
  const svg = svgEl("svg", {
    class: "pf-histogram",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    "data-tau": row.tau,
    "aria-label": `histogram at ${formatDuration(row.tau)}`,
  });

  bins.forEach((value, bin) => {
    let unit: number;
    if (value === null) {
      unit = 0;
    } else if (valueMax !== null && valueMax > 0) {
      unit = Math.min(value / valueMax, 1);
    } else {
      unit = countMax > 0 ? counts[bin] / countMax : 0;
    }
    const barHeight = unit * height;
    const attrs: Record<string, string | number> = {
      class: "pf-bar",
      x: bin * barWidth + barWidth * 0.08,
      y: height - barHeight,
      width: barWidth * 0.84,
      height: barHeight,
      fill: "#5b8def",
      "data-bin": bin,
      "data-count": counts[bin],
    };
    if (value !== null) attrs["data-value"] = value;
    svgEl("rect", attrs, svg);
  });

  host.appendChild(svg);
}

import { clearChildren, svgEl } from "./dom.js";
import { formatDuration, sliderPosToTau, tauToSliderPos } from "./scales.js";
import type { Tick } from "./types.js";

export interface SliderProps {
  tau: number;
  lower: number;
  upper: number;
  /** Top-ranked period lengths rendered as lengthened guidance ticks. */
  ticks: Tick[];
  width?: number;
  height?: number;
  onJump?: (tau: number) => void;
}

/**
 * Logarithmic period axis for coarse adjustment. The handle marks the
 * current tau; guidance ticks grow with their rank so the best-scoring
 * period lengths stand out. Clicks anywhere on the track jump there;
 * positions past either end clamp.
 */
export function renderSlider(host: HTMLElement, props: SliderProps): void {
  const width = props.width ?? 360;
  const height = props.height ?? 36;
  const trackY = height * 0.72;

  clearChildren(host);
  const svg = svgEl("svg", {
    class: "pf-slider",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    "data-lower": props.lower,
    "data-upper": props.upper,
  });

  svgEl(
    "line",
    {
      class: "pf-track",
      x1: 0,
      y1: trackY,
      x2: width,
      y2: trackY,
      stroke: "#999",
      "stroke-width": 2,
    },
    svg,
  );

  const count = props.ticks.length;
  props.ticks.forEach((tick, rank) => {
    const x = tauToSliderPos(tick.tau, props.lower, props.upper) * width;
    const length = 6 + ((count - rank) / Math.max(count, 1)) * (height * 0.45);
    svgEl(
      "line",
      {
        class: "pf-tick",
        x1: x,
        y1: trackY,
        x2: x,
        y2: trackY - length,
        stroke: "#ccc",
        "stroke-width": 1.5,
        "data-tau": tick.tau,
        "data-score": tick.score,
        "data-rank": rank + 1,
      },
      svg,
    );
  });

  const handleX = tauToSliderPos(props.tau, props.lower, props.upper) * width;
  svgEl(
    "circle",
    {
      class: "pf-handle",
      cx: handleX,
      cy: trackY,
      r: 5,
      fill: "#fff",
      "data-tau": props.tau,
    },
    svg,
  );

  svg.addEventListener("click", (event: MouseEvent) => {
    if (!props.onJump) return;
    // jsdom reports zero-size rects, so map clientX against the fixed width.
    const origin = (svg as SVGSVGElement).getBoundingClientRect().left;
    const pos = (event.clientX - origin) / width;
    props.onJump(sliderPosToTau(pos, props.lower, props.upper));
  });

  svg.setAttribute(
    "aria-label",
    `period slider from ${formatDuration(props.lower)} to ${formatDuration(props.upper)}`,
  );
  host.appendChild(svg);
}

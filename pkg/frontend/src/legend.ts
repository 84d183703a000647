import { clearChildren, svgEl } from "./dom.js";
import { moonPath, rectangleAngleDeg, rectanglePath, starMorphPath } from "./glyphs.js";
import { cutColor, cyclicColor } from "./scales.js";
import { TWO_PI } from "./state.js";
import type { MappingKind } from "./types.js";

export interface LegendProps {
  mapping: MappingKind;
  /** Current rotation in radians, [0, 2*pi). */
  offset: number;
  width?: number;
  height?: number;
  /** Fires continuously while the offset handle is dragged. */
  onOffsetChange?: (offset: number) => void;
}

const COLOR_STEPS = 64;
const GLYPH_STEPS = 8;

/**
 * Legend for the phase-to-visual mapping, with a draggable marker that
 * rotates the mapping offset. Dragging across the full legend width is
 * one whole turn, so half the width shifts every phase by pi.
 */
export function renderLegend(host: HTMLElement, props: LegendProps): void {
  const width = props.width ?? 256;
  const height = props.height ?? 34;
  const stripHeight = height * 0.55;

  clearChildren(host);
  const svg = svgEl("svg", {
    class: "pf-legend",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    "data-mapping": props.mapping,
    "data-offset": props.offset,
  });

  if (props.mapping === "cyclic-color" || props.mapping === "cut-color") {
    const color = props.mapping === "cyclic-color" ? cyclicColor : cutColor;
    const step = width / COLOR_STEPS;
    for (let i = 0; i < COLOR_STEPS; i++) {
      svgEl(
        "rect",
        {
          x: i * step,
          y: 0,
          width: step + 0.5,
          height: stripHeight,
          fill: color((i + 0.5) / COLOR_STEPS),
        },
        svg,
      );
    }
  } else {
    const r = stripHeight * 0.45;
    for (let i = 0; i < GLYPH_STEPS; i++) {
      const u = i / GLYPH_STEPS;
      const cx = ((i + 0.5) / GLYPH_STEPS) * width;
      const cy = stripHeight / 2;
      let d: string;
      let rotate = 0;
      if (props.mapping === "moon") {
        d = moonPath(u, r);
      } else if (props.mapping === "rotated-rectangle") {
        d = rectanglePath(r);
        rotate = rectangleAngleDeg(u);
      } else {
        d = starMorphPath(u, r);
      }
      svgEl(
        "path",
        {
          d,
          fill: "#ddd",
          transform: `translate(${cx} ${cy}) rotate(${rotate})`,
          "data-u": u,
        },
        svg,
      );
    }
  }

  // Offset marker: phase zero lands here after rotation.
  const markerX = (props.offset / TWO_PI) * width;
  const handle = svgEl(
    "g",
    { class: "pf-offset-handle", "data-offset": props.offset },
    svg,
  );
  svgEl(
    "line",
    {
      x1: markerX,
      y1: 0,
      x2: markerX,
      y2: height,
      stroke: "#fff",
      "stroke-width": 2,
    },
    handle,
  );
  svgEl(
    "path",
    {
      d: `M ${markerX - 5} ${height} L ${markerX + 5} ${height} L ${markerX} ${height - 7} Z`,
      fill: "#fff",
    },
    handle,
  );

  handle.addEventListener("mousedown", (down: MouseEvent) => {
    down.preventDefault();
    const startOffset = props.offset;
    const startX = down.clientX;
    const emit = (clientX: number) => {
      // Pixel delta against the configured width; jsdom has no layout,
      // so live rects are useless here.
      const delta = ((clientX - startX) / width) * TWO_PI;
      props.onOffsetChange?.(startOffset + delta);
    };
    const onMove = (move: MouseEvent) => emit(move.clientX);
    const onUp = (up: MouseEvent) => {
      emit(up.clientX);
      window.removeEventListener("mousemove", onMove);
      window.removeEventListener("mouseup", onUp);
    };
    window.addEventListener("mousemove", onMove);
    window.addEventListener("mouseup", onUp);
  });

  host.appendChild(svg);
}

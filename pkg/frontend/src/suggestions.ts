import { clearChildren, htmlEl, svgEl } from "./dom.js";
import { formatDuration } from "./scales.js";
import type { Suggestion } from "./types.js";

export interface SuggestionsProps {
  suggestions: Suggestion[];
  /** Called with the picked suggestion; its tau is current tau times factor. */
  onPick?: (suggestion: Suggestion) => void;
  thumbWidth?: number;
  thumbHeight?: number;
}

/**
 * Ranked rational-factor alternatives as clickable thumbnails, each a
 * miniature of the histogram the fold would produce at that period.
 */
export function renderSuggestions(host: HTMLElement, props: SuggestionsProps): void {
  const thumbWidth = props.thumbWidth ?? 64;
  const thumbHeight = props.thumbHeight ?? 36;

  clearChildren(host);
  const strip = htmlEl("div", "pf-suggestions", host);

  for (const suggestion of props.suggestions) {
    const button = htmlEl("button", "pf-thumb", strip);
    button.type = "button";
    button.dataset.factor = suggestion.factor;
    button.dataset.tau = String(suggestion.tau);
    button.dataset.score = String(suggestion.score);
    button.title = `${suggestion.factor} → ${formatDuration(suggestion.tau)}`;

    const counts = suggestion.thumbnail.counts;
    const peak = counts.reduce((a, b) => Math.max(a, b), 0);
    const svg = svgEl("svg", {
      width: thumbWidth,
      height: thumbHeight,
      viewBox: `0 0 ${thumbWidth} ${thumbHeight}`,
    });
    const barWidth = counts.length ? thumbWidth / counts.length : thumbWidth;
    counts.forEach((count, bin) => {
      const h = peak > 0 ? (count / peak) * (thumbHeight - 10) : 0;
      svgEl(
        "rect",
        {
          x: bin * barWidth,
          y: thumbHeight - 10 - h,
          width: Math.max(barWidth - 1, 0.5),
          height: h,
          fill: "#5b8def",
          "data-count": count,
        },
        svg,
      );
    });
    button.appendChild(svg);

    const label = htmlEl("span", "pf-thumb-label", button);
    label.textContent = suggestion.factor;

    button.addEventListener("click", () => props.onPick?.(suggestion));
  }
}

export { ApiClient, ApiError } from "./client.js";
export type {
  DetailQuery,
  FetchLike,
  PhasesQuery,
  SuggestionsQuery,
  TicksQuery,
  WindowQuery,
} from "./client.js";
export { renderDetail } from "./detail.js";
export type { DetailProps } from "./detail.js";
export {
  moonPath,
  rectangleAngleDeg,
  rectanglePath,
  starInnerRadius,
  starMorphPath,
} from "./glyphs.js";
export { renderHeatmap } from "./heatmap.js";
export type { HeatmapProps } from "./heatmap.js";
export { renderHistogram } from "./histogram.js";
export type { HistogramProps } from "./histogram.js";
export { renderLegend } from "./legend.js";
export type { LegendProps } from "./legend.js";
export { measureScore } from "./measures.js";
export {
  clamp,
  cutColor,
  cyclicColor,
  formatDuration,
  sequentialColor,
  sliderPosToTau,
  tauToSliderPos,
  valueToUnit,
} from "./scales.js";
export { renderScatter } from "./scatter.js";
export type { ScatterProps } from "./scatter.js";
export { renderSlider } from "./slider.js";
export type { SliderProps } from "./slider.js";
export { TWO_PI, WidgetStore } from "./state.js";
export type { TauRange, WidgetState } from "./state.js";
export { renderSuggestions } from "./suggestions.js";
export type { SuggestionsProps } from "./suggestions.js";
export * from "./types.js";
export { PeriodWidget } from "./widget.js";
export type { WidgetOptions } from "./widget.js";

import type { MeasureName, RowMeasures } from "./types.js";

/**
 * Bar fill in [0, 1] for a row under the selected measure.
 *
 * Vector strength maps directly. For entropy the interest form is used,
 * so the highest possible entropy (least interesting) gives an empty bar
 * and the lowest possible entropy gives a full bar.
 */
export function measureScore(measures: RowMeasures, measure: MeasureName): number {
  return measure === "entropy"
    ? measures.entropy_interest
    : measures.vector_strength;
}

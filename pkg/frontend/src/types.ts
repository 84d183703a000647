/**
 * JSON payload shapes served by the phasefold HTTP API.
 *
 * Field names match the wire format exactly (snake_case). Empty
 * mean/variance bins arrive as null, never NaN.
 */

export type MeasureName = "entropy" | "vector_strength";

export type MappingKind =
  | "cyclic-color"
  | "cut-color"
  | "moon"
  | "rotated-rectangle"
  | "star-morph";

/** Mappings that render u=0 and u->1 identically. */
export const CYCLIC_MAPPINGS: ReadonlySet<MappingKind> = new Set([
  "cyclic-color",
  "moon",
  "rotated-rectangle",
]);

export interface GridStatus {
  state: "missing" | "building" | "ready" | "failed";
  progress: number;
  error?: string;
}

export interface DatasetRecord {
  id: string;
  name: string;
  kind: string;
  path: string;
  loaded_at: string;
  timestamp_column: string;
  attribute_columns: string[];
  delimiter: string;
  n_events: number;
  t_start: number;
  t_end: number;
  grid: GridStatus;
}

export interface LadderInfo {
  lower_bound: number;
  upper_bound: number;
  sample_count: number;
}

export interface DatasetDetail extends DatasetRecord {
  extent: number;
  /** Attribute column name -> numpy dtype kind ("f", "i", "O", "U", ...). */
  attributes: Record<string, string>;
  ladder: LadderInfo | null;
}

export interface RowMeasures {
  entropy_bits: number;
  entropy_interest: number;
  vector_strength: number;
  mean_direction: number;
}

export type RowProvenance = "sampled" | "adhoc";

export interface WindowRow {
  tau: number;
  provenance: RowProvenance;
  /** Aggregated bin values; null marks an empty mean/variance bin. */
  bins: Array<number | null>;
  counts: number[];
  measures: RowMeasures;
}

export interface WindowPayload {
  dataset_id: string;
  tau: number;
  bin_count: number;
  aggregation: string;
  center_index: number;
  value_min: number | null;
  value_max: number | null;
  rows: WindowRow[];
}

export interface Thumbnail {
  bins: Array<number | null>;
  counts: number[];
}

export interface Suggestion {
  tau: number;
  /** Reduced fraction as text, e.g. "1/2" or "3". */
  factor: string;
  numerator: number;
  denominator: number;
  score: number;
  thumbnail: Thumbnail;
}

export interface SuggestionsPayload {
  dataset_id: string;
  tau: number;
  measure_used: MeasureName;
  elapsed_ms: number;
  suggestions: Suggestion[];
}

export interface Tick {
  tau: number;
  score: number;
  provenance: RowProvenance;
}

export interface TicksPayload {
  dataset_id: string;
  measure: MeasureName;
  ticks: Tick[];
}

export interface DetailPayload {
  dataset_id: string;
  tau: number;
  bin_count: number;
  row_count: number;
  aggregation: string;
  values: Array<Array<number | null>>;
  counts: number[][];
}

export interface PhasesPayload {
  dataset_id: string;
  tau: number;
  offset: number;
  mapping: MappingKind;
  cyclic: boolean;
  t: number[];
  u: number[];
  attributes: Record<string, Array<number | null> | string[]>;
}

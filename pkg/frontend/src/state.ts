import type { MappingKind, MeasureName } from "./types.js";

export const TWO_PI = Math.PI * 2;

/**
 * Everything the widget needs to render, minus fetched data.
 *
 * The store is the single source of truth: every interaction funnels
 * through an update here, and rendering is a pure function of this state
 * plus the data fetched for it.
 */
export interface WidgetState {
  datasetId: string;
  tau: number;
  binCount?: number;
  aggregation: string;
  measure: MeasureName;
  mapping: MappingKind;
  /** Phase rotation in radians, kept in [0, 2*pi). */
  offset: number;
  /** Attribute columns requested from the phases endpoint. */
  fields: string[];
  /** Scatter axes; when unset the renderer falls back to time vs order. */
  xField?: string;
  yField?: string;
}

export interface TauRange {
  lower: number;
  upper: number;
}

export type Unsubscribe = () => void;

function normalizeOffset(offset: number): number {
  const wrapped = offset % TWO_PI;
  const positive = wrapped < 0 ? wrapped + TWO_PI : wrapped;
  return positive >= TWO_PI ? 0 : positive;
}

export class WidgetStore {
  private current: WidgetState;
  private range: TauRange | null = null;
  private listeners = new Set<(state: WidgetState) => void>();
  /** Bumped on every update; in-flight fetches compare against it. */
  private epoch = 0;

  constructor(initial: WidgetState) {
    this.current = {
      ...initial,
      offset: normalizeOffset(initial.offset),
    };
  }

  get state(): WidgetState {
    return this.current;
  }

  get version(): number {
    return this.epoch;
  }

  /** Valid tau interval, once the dataset detail response provided it. */
  get tauRange(): TauRange | null {
    return this.range;
  }

  setRange(range: TauRange): void {
    this.range = range;
    const clamped = this.clampTau(this.current.tau);
    if (clamped !== this.current.tau) {
      this.update({ tau: clamped });
    }
  }

  clampTau(tau: number): number {
    if (!Number.isFinite(tau) || tau <= 0) {
      return this.range ? this.range.lower : 1;
    }
    if (!this.range) return tau;
    return Math.min(Math.max(tau, this.range.lower), this.range.upper);
  }

  update(partial: Partial<WidgetState>): void {
    const next: WidgetState = { ...this.current, ...partial };
    if (partial.tau !== undefined) next.tau = this.clampTau(partial.tau);
    if (partial.offset !== undefined) next.offset = normalizeOffset(partial.offset);
    this.current = next;
    this.epoch += 1;
    for (const listener of this.listeners) listener(next);
  }

  subscribe(listener: (state: WidgetState) => void): Unsubscribe {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}

import { ApiClient, ApiError } from "./client.js";
import { renderDetail } from "./detail.js";
import { clearChildren, htmlEl } from "./dom.js";
import { renderHeatmap } from "./heatmap.js";
import { renderHistogram } from "./histogram.js";
import { renderLegend } from "./legend.js";
import { renderScatter } from "./scatter.js";
import { renderSlider } from "./slider.js";
import { renderSuggestions } from "./suggestions.js";
import { WidgetStore } from "./state.js";
import type {
  DatasetDetail,
  DetailPayload,
  MappingKind,
  MeasureName,
  PhasesPayload,
  SuggestionsPayload,
  TicksPayload,
  WindowPayload,
} from "./types.js";

export interface WidgetOptions {
  tau?: number;
  binCount?: number;
  aggregation?: string;
  measure?: MeasureName;
  mapping?: MappingKind;
  offset?: number;
  /** Attribute columns fetched with phases (drives scatter axes too). */
  fields?: string[];
  xField?: string;
  yField?: string;
  /** Context rows requested on each side of the current period. */
  contextRows?: number;
  suggestionCount?: number;
  tickCount?: number;
  /** Hover delay before the detail tooltip fetch; 0 in tests. */
  detailDebounceMs?: number;
  /** Retry interval while the server grid is still precomputing. */
  pollMs?: number;
}

interface FetchedData {
  window?: WindowPayload;
  suggestions?: SuggestionsPayload;
  ticks?: TicksPayload;
  phases?: PhasesPayload;
  detail?: DetailPayload | null;
}

/**
 * The composite exploration widget.
 *
 * Owns a WidgetStore as the single source of truth; every interaction
 * updates the store and then refetches whatever that change invalidated.
 * Fetches are version-guarded: responses for a superseded state are
 * discarded, so rapid scrolling never paints a stale window.
 */
export class PeriodWidget {
  readonly element: HTMLElement;
  readonly store: WidgetStore;
  readonly client: ApiClient;
  readonly datasetId: string;
  data: FetchedData = {};
  dataset: DatasetDetail | null = null;

  private readonly options: WidgetOptions;
  private range = { lower: 1, upper: 2 };
  private hoverSeq = 0;
  private detailTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly slots: Record<string, HTMLElement>;

  constructor(
    host: HTMLElement,
    client: ApiClient,
    datasetId: string,
    options: WidgetOptions = {},
  ) {
    this.client = client;
    this.datasetId = datasetId;
    this.options = options;
    this.store = new WidgetStore({
      datasetId,
      tau: options.tau ?? 1,
      binCount: options.binCount,
      aggregation: options.aggregation ?? "count",
      measure: options.measure ?? "vector_strength",
      mapping: options.mapping ?? "cyclic-color",
      offset: options.offset ?? 0,
      fields: options.fields ?? [],
      xField: options.xField,
      yField: options.yField,
    });

    clearChildren(host);
    this.element = htmlEl("div", "pf-widget", host);
    this.slots = {
      status: htmlEl("div", "pf-status", this.element),
      histogram: htmlEl("div", "pf-histogram-host", this.element),
      legend: htmlEl("div", "pf-legend-host", this.element),
      heatmap: htmlEl("div", "pf-heatmap-host", this.element),
      suggestions: htmlEl("div", "pf-suggestions-host", this.element),
      slider: htmlEl("div", "pf-slider-host", this.element),
      scatter: htmlEl("div", "pf-scatter-host", this.element),
      detail: htmlEl("div", "pf-detail-host", this.element),
    };

    this.store.subscribe(() => this.render());
  }

  /** Load dataset metadata, pick a starting period, and fetch everything. */
  async init(): Promise<void> {
    const dataset = await this.client.dataset(this.datasetId);
    this.dataset = dataset;
    const ladder = dataset.ladder;
    this.range = ladder
      ? { lower: ladder.lower_bound, upper: ladder.upper_bound }
      : { lower: Math.min(1, dataset.extent), upper: dataset.extent };
    this.store.setRange(this.range);
    if (this.options.tau === undefined) {
      // Geometric midpoint of the valid range as a neutral starting point.
      this.store.update({
        tau: Math.sqrt(this.range.lower * this.range.upper),
      });
    } else {
      this.store.update({ tau: this.options.tau });
    }
    await Promise.all([this.refreshAll(), this.refreshTicks()]);
  }

  get tau(): number {
    return this.store.state.tau;
  }

  /** Move the current period to the adjacent grid row. */
  stepRow(direction: 1 | -1): void {
    const win = this.data.window;
    if (!win) return;
    const next = win.rows[win.center_index + direction];
    if (!next) return;
    this.setTau(next.tau);
  }

  setTau(tau: number): void {
    this.store.update({ tau });
    void this.refreshAll();
  }

  setOffset(offset: number): void {
    this.store.update({ offset });
    void this.refreshPhases();
  }

  setMapping(mapping: MappingKind): void {
    this.store.update({ mapping });
    void this.refreshPhases();
  }

  setMeasure(measure: MeasureName): void {
    this.store.update({ measure });
    void Promise.all([this.refreshSuggestions(), this.refreshTicks()]);
  }

  setAggregation(aggregation: string): void {
    this.store.update({ aggregation });
    void this.refreshWindow();
  }

  /** Row hover shows the drill-down tooltip after a debounce; null hides it. */
  hoverRow(tau: number | null): void {
    this.hoverSeq += 1;
    const seq = this.hoverSeq;
    if (this.detailTimer !== null) {
      clearTimeout(this.detailTimer);
      this.detailTimer = null;
    }
    if (tau === null) {
      this.data.detail = null;
      this.render();
      return;
    }
    const delay = this.options.detailDebounceMs ?? 150;
    this.detailTimer = setTimeout(() => {
      void this.fetchDetail(tau, seq);
    }, delay);
  }

  private async fetchDetail(tau: number, seq: number): Promise<void> {
    const state = this.store.state;
    try {
      const detail = await this.client.detail(this.datasetId, {
        tau,
        bins: state.binCount,
        aggregation: state.aggregation,
      });
      if (seq !== this.hoverSeq) return;
      this.data.detail = detail;
      this.render();
    } catch {
      if (seq === this.hoverSeq) {
        this.data.detail = null;
        this.render();
      }
    }
  }

  async refreshAll(): Promise<void> {
    await Promise.all([
      this.refreshWindow(),
      this.refreshSuggestions(),
      this.refreshPhases(),
    ]);
  }

  private async refreshWindow(): Promise<void> {
    const version = this.store.version;
    const state = this.store.state;
    try {
      const win = await this.client.window(this.datasetId, {
        tau: state.tau,
        rows: this.options.contextRows,
        bins: state.binCount,
        aggregation: state.aggregation,
      });
      if (version !== this.store.version) return;
      this.data.window = win;
      this.setStatus("");
      this.render();
    } catch (error) {
      if (version !== this.store.version) return;
      if (error instanceof ApiError && error.status === 409) {
        const progress =
          error.progress !== undefined
            ? ` (${Math.round(error.progress * 100)}%)`
            : "";
        this.setStatus(`precomputing period grid${progress}`);
        const pollMs = this.options.pollMs ?? 400;
        setTimeout(() => {
          if (version === this.store.version) void this.refreshWindow();
        }, pollMs);
        return;
      }
      this.setStatus(error instanceof Error ? error.message : String(error));
    }
  }

  private async refreshSuggestions(): Promise<void> {
    const version = this.store.version;
    const state = this.store.state;
    try {
      const payload = await this.client.suggestions(this.datasetId, {
        tau: state.tau,
        measure: state.measure,
        count: this.options.suggestionCount,
        bins: state.binCount,
      });
      if (version !== this.store.version) return;
      this.data.suggestions = payload;
      this.render();
    } catch (error) {
      if (version !== this.store.version) return;
      this.setStatus(error instanceof Error ? error.message : String(error));
    }
  }

  private async refreshTicks(): Promise<void> {
    const version = this.store.version;
    const state = this.store.state;
    try {
      const payload = await this.client.ticks(this.datasetId, {
        measure: state.measure,
        count: this.options.tickCount,
      });
      if (version !== this.store.version) return;
      this.data.ticks = payload;
      this.render();
    } catch {
      // Ticks are guidance only; the slider renders without them.
    }
  }

  private async refreshPhases(): Promise<void> {
    const version = this.store.version;
    const state = this.store.state;
    try {
      const payload = await this.client.phases(this.datasetId, {
        tau: state.tau,
        offset: state.offset,
        mapping: state.mapping,
        fields: state.fields,
      });
      if (version !== this.store.version) return;
      this.data.phases = payload;
      this.render();
    } catch (error) {
      if (version !== this.store.version) return;
      this.setStatus(error instanceof Error ? error.message : String(error));
    }
  }

  private setStatus(text: string): void {
    this.slots.status.textContent = text;
  }

  render(): void {
    const state = this.store.state;
    const win = this.data.window;
    if (win) {
      renderHeatmap(this.slots.heatmap, {
        window: win,
        measure: state.measure,
        onStep: (direction) => this.stepRow(direction),
        onRowClick: (tau) => this.setTau(tau),
        onRowHover: (tau) => this.hoverRow(tau),
      });
      renderHistogram(this.slots.histogram, {
        row: win.rows[win.center_index],
        valueMax: win.value_max,
      });
    }
    renderLegend(this.slots.legend, {
      mapping: state.mapping,
      offset: state.offset,
      onOffsetChange: (offset) => this.setOffset(offset),
    });
    if (this.data.suggestions) {
      renderSuggestions(this.slots.suggestions, {
        suggestions: this.data.suggestions.suggestions,
        onPick: (s) => this.setTau(s.tau),
      });
    }
    renderSlider(this.slots.slider, {
      tau: state.tau,
      lower: this.range.lower,
      upper: this.range.upper,
      ticks: this.data.ticks ? this.data.ticks.ticks : [],
      onJump: (tau) => this.setTau(tau),
    });
    if (this.data.phases) {
      renderScatter(this.slots.scatter, {
        phases: this.data.phases,
        mapping: state.mapping,
        xField: state.xField,
        yField: state.yField,
      });
    }
    if (this.data.detail) {
      renderDetail(this.slots.detail, { detail: this.data.detail });
      this.slots.detail.style.display = "";
    } else {
      clearChildren(this.slots.detail);
      this.slots.detail.style.display = "none";
    }
  }
}

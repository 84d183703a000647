import type {
  DatasetDetail,
  DatasetRecord,
  DetailPayload,
  MappingKind,
  MeasureName,
  PhasesPayload,
  SuggestionsPayload,
  TicksPayload,
  WindowPayload,
} from "./types.js";

/** A non-2xx response, carrying the server's detail message. */
export class ApiError extends Error {
  readonly status: number;
  /** Build progress in [0, 1]; present on 409 grid-not-ready responses. */
  readonly progress?: number;

  constructor(status: number, detail: string, progress?: number) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
    this.progress = progress;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface WindowQuery {
  tau: number;
  rows?: number;
  bins?: number;
  aggregation?: string;
}

export interface SuggestionsQuery {
  tau: number;
  measure?: MeasureName;
  count?: number;
  bins?: number;
}

export interface TicksQuery {
  measure?: MeasureName;
  count?: number;
}

export interface DetailQuery {
  tau: number;
  bins?: number;
  aggregation?: string;
}

export interface PhasesQuery {
  tau: number;
  offset?: number;
  mapping?: MappingKind;
  fields?: string[];
}

function buildQuery(params: Record<string, unknown>): string {
  const usp = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value === undefined || value === null || value === "") continue;
    usp.set(key, String(value));
  }
  const text = usp.toString();
  return text ? `?${text}` : "";
}

/**
 * Typed access to the phasefold service.
 *
 * The fetch function is injectable so tests can swap in a fixture server;
 * by default the global fetch is used.
 */
export class ApiClient {
  readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      const record = (body ?? {}) as { detail?: unknown; progress?: unknown };
      const detail =
        typeof record.detail === "string"
          ? record.detail
          : `request failed with status ${response.status}`;
      const progress =
        typeof record.progress === "number" ? record.progress : undefined;
      throw new ApiError(response.status, detail, progress);
    }
    return body as T;
  }

  health(): Promise<{ status: string; version: string }> {
    return this.getJson("/health");
  }

  async listDatasets(): Promise<DatasetRecord[]> {
    const body = await this.getJson<{ datasets: DatasetRecord[] }>("/datasets");
    return body.datasets;
  }

  dataset(id: string): Promise<DatasetDetail> {
    return this.getJson(`/datasets/${encodeURIComponent(id)}`);
  }

  window(id: string, query: WindowQuery): Promise<WindowPayload> {
    return this.getJson(
      `/datasets/${encodeURIComponent(id)}/window${buildQuery({ ...query })}`,
    );
  }

  suggestions(id: string, query: SuggestionsQuery): Promise<SuggestionsPayload> {
    return this.getJson(
      `/datasets/${encodeURIComponent(id)}/suggestions${buildQuery({ ...query })}`,
    );
  }

  ticks(id: string, query: TicksQuery = {}): Promise<TicksPayload> {
    return this.getJson(
      `/datasets/${encodeURIComponent(id)}/ticks${buildQuery({ ...query })}`,
    );
  }

  detail(id: string, query: DetailQuery): Promise<DetailPayload> {
    return this.getJson(
      `/datasets/${encodeURIComponent(id)}/detail${buildQuery({ ...query })}`,
    );
  }

  phases(id: string, query: PhasesQuery): Promise<PhasesPayload> {
    const { fields, ...rest } = query;
    const params: Record<string, unknown> = { ...rest };
    if (fields && fields.length) params.fields = fields.join(",");
    return this.getJson(
      `/datasets/${encodeURIComponent(id)}/phases${buildQuery(params)}`,
    );
  }
}

/** Typed fetch wrapper for /api/v1; the UI's only backend coupling.
 *
 * Backend validation errors are surfaced verbatim through ApiError so the
 * panels can show exactly what the service said. A 409 carries the current
 * revision for the conflict prompt.
 */

import type {
  AnalyticsResponse,
  CommunitiesResponse,
  ComponentDoc,
  DiffusionRequest,
  DiffusionResponse,
  EdgeDoc,
  GraphResponse,
  HistogramResponse,
  JobResponse,
  ModelDoc,
  SignalsResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
    public currentRevision?: number,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}/api/v1${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const text = await response.text();
    const body = text ? JSON.parse(text) : null;
    if (!response.ok) {
      const message = body?.error ?? `request failed with status ${response.status}`;
      throw new ApiError(response.status, message, body?.revision);
    }
    return body as T;
  }

  private query(params: Record<string, string | number | boolean | undefined>): string {
    const entries = Object.entries(params).filter(([, v]) => v !== undefined);
    if (!entries.length) return "";
    const qs = new URLSearchParams(entries.map(([k, v]) => [k, String(v)]));
    return `?${qs}`;
  }

  getModel(): Promise<ModelDoc> {
    return this.request("/model");
  }

  putModel(doc: ModelDoc): Promise<ModelDoc> {
    return this.request("/model", { method: "PUT", body: JSON.stringify(doc) });
  }

  postComponent(doc: Partial<ComponentDoc>, expectedRevision: number): Promise<{ revision: number }> {
    return this.request(`/components${this.query({ expected_revision: expectedRevision })}`, {
      method: "POST",
      body: JSON.stringify(doc),
    });
  }

  deleteComponent(id: string, expectedRevision: number): Promise<{ revision: number }> {
    return this.request(
      `/components/${encodeURIComponent(id)}${this.query({ expected_revision: expectedRevision })}`,
      { method: "DELETE" },
    );
  }

  postEdge(edge: Partial<EdgeDoc>, expectedRevision: number): Promise<{ revision: number }> {
    return this.request(`/edges${this.query({ expected_revision: expectedRevision })}`, {
      method: "POST",
      body: JSON.stringify(edge),
    });
  }

  deleteEdge(source: string, target: string, relationType: string): Promise<{ revision: number }> {
    return this.request(
      `/edges/${encodeURIComponent(source)}/${encodeURIComponent(target)}/${encodeURIComponent(relationType)}`,
      { method: "DELETE" },
    );
  }

  getGraph(types?: string[], symmetrize?: boolean): Promise<GraphResponse> {
    return this.request(
      `/graph${this.query({ types: types?.join(","), symmetrize })}`,
    );
  }

  getAnalytics(
    metric: string,
    opts: { types?: string[]; distance?: string; weighted?: boolean } = {},
  ): Promise<AnalyticsResponse> {
    return this.request(
      `/analytics/${metric}${this.query({
        types: opts.types?.join(","),
        distance: opts.distance,
        weighted: opts.weighted,
      })}`,
    );
  }

  getHistogram(types?: string[]): Promise<HistogramResponse> {
    return this.request(`/analytics/degree-histogram${this.query({ types: types?.join(",") })}`);
  }

  getCommunities(method: string, k?: number, seed?: number): Promise<CommunitiesResponse> {
    return this.request(`/communities${this.query({ method, k, seed })}`);
  }

  postDiffusion(body: DiffusionRequest): Promise<DiffusionResponse> {
    return this.request("/diffusion", { method: "POST", body: JSON.stringify(body) });
  }

  getJob(id: string): Promise<JobResponse> {
    return this.request(`/jobs/${encodeURIComponent(id)}`);
  }

  cancelJob(id: string): Promise<JobResponse> {
    return this.request(`/jobs/${encodeURIComponent(id)}`, { method: "DELETE" });
  }

  getSignals(): Promise<SignalsResponse> {
    return this.request("/impact/signals");
  }

  refreshSignals(feeds: string[]): Promise<SignalsResponse> {
    return this.request("/impact/refresh", {
      method: "POST",
      body: JSON.stringify({ feeds }),
    });
  }

  exportDocument(format: string): Promise<string> {
    return fetch(`${this.baseUrl}/api/v1/export?format=${format}`).then((r) => r.text());
  }
}

import type { Finding, GraphPayload, SearchResponse } from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

/** Thin client for the /v1 endpoints; fetch is injectable for tests. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) {
      throw new Error(`request failed (${response.status}): ${path}`);
    }
    return (await response.json()) as T;
  }

  searchJournals(query: string, pageSize = 50): Promise<SearchResponse> {
    const q = encodeURIComponent(query);
    return this.get<SearchResponse>(`/v1/journals?q=${q}&page_size=${pageSize}`);
  }

  journalAnomalies(journalId: string, year?: number): Promise<Finding[]> {
    const suffix = year === undefined ? "" : `?year=${year}`;
    return this.get<Finding[]>(
      `/v1/journals/${encodeURIComponent(journalId)}/anomalies${suffix}`,
    );
  }

  journalGraph(journalId: string, year: number): Promise<GraphPayload> {
    return this.get<GraphPayload>(
      `/v1/journals/${encodeURIComponent(journalId)}/graph?year=${year}`,
    );
  }

  years(): Promise<{ years: number[] }> {
    return this.get<{ years: number[] }>("/v1/years");
  }
}

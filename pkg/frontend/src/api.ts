import {
  ComponentRow,
  DraftStatus,
  MatrixDocument,
  ProblemDocument,
  SolutionDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: unknown,
    message?: string,
  ) {
    super(message ?? `request failed with status ${status}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client for the session HTTP API; no decision math happens here. */
export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = response.status === 204 ? null : await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body);
    }
    return body as T;
  }

  async createSession(): Promise<string> {
    const body = await this.request<{ id: string }>("/api/sessions", {
      method: "POST",
    });
    return body.id;
  }

  putProblem(sid: string, doc: ProblemDocument): Promise<DraftStatus> {
    return this.request(`/api/sessions/${sid}/problem`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
  }

  getProblem(sid: string): Promise<ProblemDocument> {
    return this.request(`/api/sessions/${sid}/problem`);
  }

  patchComparison(
    sid: string,
    pair: number,
    components: ComponentRow[],
  ): Promise<DraftStatus> {
    return this.request(`/api/sessions/${sid}/comparisons/${pair}`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ components }),
    });
  }

  getMatrix(sid: string): Promise<MatrixDocument> {
    return this.request(`/api/sessions/${sid}/matrix`);
  }

  getSolution(
    sid: string,
    opts: { lambda?: number; credibility?: string } = {},
  ): Promise<SolutionDocument> {
    const params = new URLSearchParams();
    if (opts.lambda !== undefined) {
      params.set("lambda", String(opts.lambda));
    } else if (opts.credibility !== undefined) {
      params.set("credibility", opts.credibility);
    }
    const query = params.toString();
    return this.request(
      `/api/sessions/${sid}/solution${query ? `?${query}` : ""}`,
    );
  }

  async healthy(): Promise<boolean> {
    try {
      const body = await this.request<{ status: string }>("/api/health");
      return body.status === "ok";
    } catch {
      return false;
    }
  }
}

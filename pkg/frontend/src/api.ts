/**
 * Typed client for the paraphrasing service.
 *
 * Every method resolves to the parsed JSON body or rejects with ApiError.
 * Server error bodies are always {code, message}; a fetch-level failure
 * (connection refused, DNS, aborted) maps to code "backend_unavailable" so
 * callers handle "no server" and "server said 503" the same way.
 */

export interface ClassifyResponse {
  emotion: string | null;
  id: number | null;
  score: number | null;
  scores: number[];
}

export interface GraphEmotion {
  name: string;
  cluster: number;
  intensity_rank: number;
}

/** Graph config document; `emotions` is id-ordered, so index == emotion id. */
export interface GraphDoc {
  emotions: GraphEmotion[];
  edges: [string, string][];
}

export interface Suggestion {
  target: number;
  target_name: string;
  hops: number;
  rationale: string;
}

export interface TransitionsResponse {
  suggestions: Suggestion[];
}

export interface ParaphraseResponse {
  output: string;
  prefix: string;
  source: { id: number; name: string };
  target: { id: number; name: string };
  graph_valid: boolean;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.code = code;
    this.status = status;
  }
}

export interface ClientOptions {
  /** Service origin, e.g. "http://127.0.0.1:8080". Default: same origin. */
  baseUrl?: string;
  /** Injectable for tests; defaults to global fetch. */
  fetchFn?: FetchLike;
}

export class Client {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(opts: ClientOptions = {}) {
    this.baseUrl = (opts.baseUrl ?? "").replace(/\/+$/, "");
    // wrap the global so it keeps its expected `this` in browsers
    this.fetchFn = opts.fetchFn ?? ((input, init) => fetch(input, init));
  }

  classify(text: string): Promise<ClassifyResponse> {
    return this.request("POST", "/api/classify", { text });
  }

  graph(): Promise<GraphDoc> {
    return this.request("GET", "/api/graph");
  }

  transitions(emotion: string | number): Promise<TransitionsResponse> {
    return this.request("POST", "/api/transitions", { emotion });
  }

  paraphrase(
    text: string,
    target: string | number,
    source: string | number | null = null,
  ): Promise<ParaphraseResponse> {
    return this.request("POST", "/api/paraphrase", { text, target, source });
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchFn(this.baseUrl + path, {
        method,
        ...(body === undefined
          ? {}
          : {
              headers: { "Content-Type": "application/json" },
              body: JSON.stringify(body),
            }),
      });
    } catch (err) {
      throw new ApiError("backend_unavailable", 0, `service unreachable: ${String(err)}`);
    }
    if (!res.ok) {
      let code = "internal";
      let message = `HTTP ${res.status}`;
      try {
        const data = (await res.json()) as { code?: unknown; message?: unknown };
        if (typeof data.code === "string") code = data.code;
        if (typeof data.message === "string") message = data.message;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(code, res.status, message);
    }
    return (await res.json()) as T;
  }
}

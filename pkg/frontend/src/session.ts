/**
 * In-memory state for one rewrite session.
 *
 * Lifecycle: draft → classify → choose target → paraphrase → accept/edit.
 *
 * Invariants held here rather than in the DOM layer:
 *   - a target is only choosable once a classification with a dominant
 *     emotion is present;
 *   - history is append-only and accept() is its only writer;
 *   - editing the draft (or pressing "edit") resets everything downstream
 *     of it but never touches history;
 *   - at most one request per action counts: each classify/paraphrase bumps
 *     a token, and a response whose token is no longer current is dropped.
 *
 * Emotion names and ids all come from the server's graph document; nothing
 * here hardcodes the taxonomy.
 */

import {
  ApiError,
  Client,
  type ClassifyResponse,
  type GraphDoc,
  type ParaphraseResponse,
  type Suggestion,
} from "./api.js";

export interface HistoryRow {
  draft: string;
  source: string;
  target: string;
  output: string;
}

/** "stale" means a newer request of the same kind superseded this one. */
export type Outcome = "ok" | "stale" | "error";

/** A UI-flow violation (choose before classify, accept with no result…). */
export class StateError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "StateError";
  }
}

function toApiError(err: unknown): ApiError {
  return err instanceof ApiError ? err : new ApiError("internal", 0, String(err));
}

export class Session {
  draft = "";
  graphDoc: GraphDoc | null = null;
  classified: ClassifyResponse | null = null;
  suggestions: Suggestion[] | null = null;
  chosenTarget: number | null = null;
  result: ParaphraseResponse | null = null;
  readonly history: HistoryRow[] = [];
  /** Last failed action's error, for the toast; cleared on the next attempt. */
  lastError: ApiError | null = null;

  private readonly client: Client;
  private idByName = new Map<string, number>();
  private edges = new Set<string>();
  private classifyToken = 0;
  private paraphraseToken = 0;

  constructor(client: Client) {
    this.client = client;
  }

  /** Fetch the graph document; must succeed before anything renders names. */
  async init(): Promise<Outcome> {
    this.lastError = null;
    try {
      const doc = await this.client.graph();
      this.graphDoc = doc;
      this.idByName = new Map(doc.emotions.map((e, id) => [e.name, id]));
      this.edges = new Set(
        doc.edges.map(([a, b]) => `${this.idByName.get(a)}>${this.idByName.get(b)}`),
      );
      return "ok";
    } catch (err) {
      this.lastError = toApiError(err);
      return "error";
    }
  }

  emotionName(id: number): string {
    const e = this.graphDoc?.emotions[id];
    if (e === undefined) throw new StateError(`unknown emotion id ${id}`);
    return e.name;
  }

  isOnGraph(source: number, target: number): boolean {
    return this.edges.has(`${source}>${target}`);
  }

  /** True when the chosen transition is off-graph (picker warning chip). */
  chosenOffGraph(): boolean {
    return (
      this.chosenTarget !== null &&
      this.classified?.id != null &&
      !this.isOnGraph(this.classified.id, this.chosenTarget)
    );
  }

  setDraft(text: string): void {
    this.draft = text;
    this.resetDownstream();
  }

  async classify(): Promise<Outcome> {
    if (!this.draft.trim()) throw new StateError("draft is empty");
    const token = ++this.classifyToken;
    this.lastError = null;
    try {
      const res = await this.client.classify(this.draft);
      if (token !== this.classifyToken) return "stale";
      this.classified = res;
      this.suggestions = null;
      this.chosenTarget = null;
      this.result = null;
      if (res.id !== null) {
        const tr = await this.client.transitions(res.id);
        if (token !== this.classifyToken) return "stale";
        this.suggestions = tr.suggestions;
      }
      return "ok";
    } catch (err) {
      if (token !== this.classifyToken) return "stale";
      this.lastError = toApiError(err);
      return "error";
    }
  }

  chooseTarget(emotion: string | number): void {
    if (this.classified === null || this.classified.id === null) {
      throw new StateError("classify the draft (with a dominant emotion) before choosing a target");
    }
    this.chosenTarget = this.resolveId(emotion);
    // a new pick invalidates the previous card and any in-flight run
    this.result = null;
    this.paraphraseToken++;
  }

  async paraphrase(): Promise<Outcome> {
    if (this.classified === null || this.classified.id === null) {
      throw new StateError("classify the draft before paraphrasing");
    }
    if (this.chosenTarget === null) throw new StateError("choose a target first");
    const token = ++this.paraphraseToken;
    this.lastError = null;
    try {
      const res = await this.client.paraphrase(this.draft, this.chosenTarget, this.classified.id);
      if (token !== this.paraphraseToken) return "stale";
      this.result = res;
      return "ok";
    } catch (err) {
      if (token !== this.paraphraseToken) return "stale";
      this.lastError = toApiError(err); // result and history stay untouched
      return "error";
    }
  }

  /** Append the current result to history; the card is consumed by this. */
  accept(): void {
    if (this.result === null) throw new StateError("nothing to accept");
    this.history.push({
      draft: this.draft,
      source: this.result.source.name,
      target: this.result.target.name,
      output: this.result.output,
    });
    this.result = null;
  }

  /** Back to the classify stage; draft and history survive. */
  edit(): void {
    this.resetDownstream();
  }

  private resetDownstream(): void {
    this.classified = null;
    this.suggestions = null;
    this.chosenTarget = null;
    this.result = null;
    this.classifyToken++;
    this.paraphraseToken++;
  }

  private resolveId(emotion: string | number): number {
    if (this.graphDoc === null) throw new StateError("graph not loaded; call init() first");
    if (typeof emotion === "number") {
      if (!Number.isInteger(emotion) || emotion < 0 || emotion >= this.graphDoc.emotions.length) {
        throw new StateError(`unknown emotion id ${emotion}`);
      }
      return emotion;
    }
    const id = this.idByName.get(emotion);
    if (id === undefined) throw new StateError(`unknown emotion "${emotion}"`);
    return id;
  }
}

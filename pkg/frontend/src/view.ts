/**
 * Pure HTML renderers — no DOM access, so they run (and test) anywhere.
 * main.ts owns the actual document wiring.
 */

import type { ClassifyResponse, GraphDoc, ParaphraseResponse, Suggestion } from "./api.js";
import type { HistoryRow } from "./session.js";

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&#39;",
};

export function escapeHtml(s: string): string {
  return s.replace(/[&<>"']/g, (c) => ESCAPES[c] ?? c);
}

/** Dominant-emotion badge; the all-below-threshold case gets its own state. */
export function renderBadge(c: ClassifyResponse | null): string {
  if (c === null) return "";
  if (c.emotion === null) {
    return `<span class="badge badge-none">no dominant emotion</span>`;
  }
  const score = (c.score ?? 0).toFixed(2);
  return `<span class="badge" data-emotion="${escapeHtml(c.emotion)}">${escapeHtml(c.emotion)} ${score}</span>`;
}

/** One bar per emotion, in id order, widths proportional to score. */
export function renderScoreBars(c: ClassifyResponse, doc: GraphDoc): string {
  const rows = c.scores.map((score, id) => {
    const name = doc.emotions[id]?.name ?? `#${id}`;
    const pct = Math.round(Math.max(0, Math.min(1, score)) * 100);
    return (
      `<div class="score-row${id === c.id ? " score-top" : ""}">` +
      `<span class="score-name">${escapeHtml(name)}</span>` +
      `<span class="score-track"><span class="score-fill" style="width:${pct}%"></span></span>` +
      `<span class="score-value">${score.toFixed(2)}</span>` +
      `</div>`
    );
  });
  return `<div class="score-bars">${rows.join("")}</div>`;
}

/**
 * Cluster map: one column per cluster, the neutral cluster centered, and
 * within a column the highest-intensity emotion on top — intensity falls
 * toward the neutral baseline at the bottom.
 */
export function renderClusterMap(doc: GraphDoc, highlightId: number | null = null): string {
  const byCluster = new Map<number, { id: number; name: string; rank: number }[]>();
  doc.emotions.forEach((e, id) => {
    const cell = { id, name: e.name, rank: e.intensity_rank };
    const bucket = byCluster.get(e.cluster);
    if (bucket) bucket.push(cell);
    else byCluster.set(e.cluster, [cell]);
  });

  // neutral is the final taxon in id order and sits in its own cluster
  const neutralCluster = doc.emotions[doc.emotions.length - 1]?.cluster ?? 0;
  const others = [...byCluster.keys()].filter((c) => c !== neutralCluster).sort((a, b) => a - b);
  const mid = Math.floor(others.length / 2);
  const order = [...others.slice(0, mid), neutralCluster, ...others.slice(mid)];

  const cols = order.map((cluster) => {
    const cells = (byCluster.get(cluster) ?? [])
      .sort((a, b) => b.rank - a.rank)
      .map(
        (e) =>
          `<div class="cell${e.id === highlightId ? " cell-active" : ""}" data-id="${e.id}">${escapeHtml(e.name)}</div>`,
      )
      .join("");
    const cls = cluster === neutralCluster ? "cluster-col cluster-neutral" : "cluster-col";
    return `<div class="${cls}" data-cluster="${cluster}">${cells}</div>`;
  });
  return `<div class="cluster-map">${cols.join("")}</div>`;
}

export interface PickerView {
  suggestions: Suggestion[];
  /** id-ordered names from the graph document (free-choice options). */
  emotionNames: string[];
  chosenTarget: number | null;
  /** chosen transition not an edge of the graph → warning chip */
  chosenOffGraph: boolean;
}

/**
 * Suggestion list: within-cluster hops first (server order), the to-neutral
 * hop in its own group after them, then a free-choice override. An empty
 * suggestion list means the source has no outgoing transitions — i.e. it is
 * already neutral.
 */
export function renderPicker(v: PickerView): string {
  if (v.suggestions.length === 0) {
    return `<p class="picker-empty">already neutral — no transitions from here</p>`;
  }
  const item = (s: Suggestion) =>
    `<li><button type="button" class="pick${s.target === v.chosenTarget ? " pick-chosen" : ""}" data-id="${s.target}">` +
    `${escapeHtml(s.target_name)}</button><span class="hops">${s.hops} hop${s.hops === 1 ? "" : "s"}</span></li>`;
  const within = v.suggestions.filter((s) => s.rationale !== "to-neutral");
  const toNeutral = v.suggestions.filter((s) => s.rationale === "to-neutral");
  const options = v.emotionNames
    .map(
      (name, id) =>
        `<option value="${id}"${id === v.chosenTarget ? " selected" : ""}>${escapeHtml(name)}</option>`,
    )
    .join("");
  const chip =
    v.chosenTarget !== null && v.chosenOffGraph
      ? `<span class="chip chip-warn">off-graph transition</span>`
      : "";
  return (
    `<div class="picker">` +
    `<ol class="picker-group picker-within">${within.map(item).join("")}</ol>` +
    `<ol class="picker-group picker-to-neutral">${toNeutral.map(item).join("")}</ol>` +
    `<label class="free-pick">any emotion ` +
    `<select class="pick-any"><option value="">—</option>${options}</select></label>${chip}` +
    `</div>`
  );
}

/** Result card: output, the exact prefix line sent, and graph validity. */
export function renderResultCard(r: ParaphraseResponse): string {
  const validity = r.graph_valid
    ? `<span class="chip chip-ok">on-graph</span>`
    : `<span class="chip chip-warn">off-graph transition</span>`;
  return (
    `<div class="result-card">` +
    `<p class="result-output">${escapeHtml(r.output)}</p>` +
    `<code class="result-prefix">${escapeHtml(r.prefix)}</code>` +
    `<p class="result-transition">${escapeHtml(r.source.name)} → ${escapeHtml(r.target.name)} ${validity}</p>` +
    `<div class="result-actions">` +
    `<button type="button" class="accept">accept</button>` +
    `<button type="button" class="rerun">re-run</button>` +
    `<button type="button" class="edit">edit</button>` +
    `</div>` +
    `</div>`
  );
}

export function renderToast(message: string): string {
  return (
    `<div class="toast" role="alert">${escapeHtml(message)} ` +
    `<button type="button" class="toast-retry">retry</button></div>`
  );
}

export function renderHistory(rows: readonly HistoryRow[]): string {
  if (rows.length === 0) return `<p class="history-empty">no accepted rewrites yet</p>`;
  const body = rows
    .map(
      (r) =>
        `<tr><td>${escapeHtml(r.draft)}</td><td>${escapeHtml(r.source)}</td>` +
        `<td>${escapeHtml(r.target)}</td><td>${escapeHtml(r.output)}</td></tr>`,
    )
    .join("");
  return (
    `<table class="history">` +
    `<thead><tr><th>draft</th><th>source</th><th>target</th><th>output</th></tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

/**
 * Document wiring for the rewrite panel. All state lives in Session; all
 * markup comes from the pure renderers in view.ts; this file only moves
 * strings into containers and events into session calls.
 *
 * The service origin is taken from the "api" query parameter, falling back
 * to the page's own origin:  index.html?api=http://127.0.0.1:8080
 */

import { Client } from "./api.js";
import { Session, StateError } from "./session.js";
import {
  renderBadge,
  renderClusterMap,
  renderHistory,
  renderPicker,
  renderResultCard,
  renderScoreBars,
  renderToast,
} from "./view.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

const params = new URLSearchParams(location.search);
const client = new Client({ baseUrl: params.get("api") ?? "" });
const session = new Session(client);

const draftInput = el<HTMLTextAreaElement>("draft");
const classifyBtn = el<HTMLButtonElement>("classify");
const badgeBox = el<HTMLElement>("badge");
const barsBox = el<HTMLElement>("bars");
const mapBox = el<HTMLElement>("map");
const pickerBox = el<HTMLElement>("picker");
const resultBox = el<HTMLElement>("result");
const historyBox = el<HTMLElement>("history");
const toastBox = el<HTMLElement>("toast");

let retry: (() => void) | null = null;

function refresh(): void {
  classifyBtn.disabled = !session.draft.trim();
  badgeBox.innerHTML = renderBadge(session.classified);
  barsBox.innerHTML =
    session.classified && session.graphDoc
      ? renderScoreBars(session.classified, session.graphDoc)
      : "";
  mapBox.innerHTML = session.graphDoc
    ? renderClusterMap(session.graphDoc, session.classified?.id ?? null)
    : "";
  pickerBox.innerHTML =
    session.suggestions && session.graphDoc
      ? renderPicker({
          suggestions: session.suggestions,
          emotionNames: session.graphDoc.emotions.map((e) => e.name),
          chosenTarget: session.chosenTarget,
          chosenOffGraph: session.chosenOffGraph(),
        })
      : "";
  resultBox.innerHTML = session.result ? renderResultCard(session.result) : "";
  historyBox.innerHTML = renderHistory(session.history);
  toastBox.innerHTML = session.lastError ? renderToast(session.lastError.message) : "";
}

function toastCatch(err: unknown): void {
  if (err instanceof StateError) {
    toastBox.innerHTML = renderToast(err.message);
    return;
  }
  throw err;
}

async function runClassify(): Promise<void> {
  retry = () => void runClassify();
  await session.classify();
  refresh();
}

async function runParaphrase(): Promise<void> {
  retry = () => void runParaphrase();
  await session.paraphrase();
  refresh();
}

draftInput.addEventListener("input", () => {
  session.setDraft(draftInput.value);
  refresh();
});

classifyBtn.addEventListener("click", () => void runClassify().catch(toastCatch));

pickerBox.addEventListener("click", (ev) => {
  const btn = (ev.target as HTMLElement).closest<HTMLButtonElement>("button.pick");
  if (!btn) return;
  try {
    session.chooseTarget(Number(btn.dataset.id));
  } catch (err) {
    toastCatch(err);
    return;
  }
  void runParaphrase().catch(toastCatch);
});

pickerBox.addEventListener("change", (ev) => {
  const select = (ev.target as HTMLElement).closest<HTMLSelectElement>("select.pick-any");
  if (!select || select.value === "") return;
  try {
    session.chooseTarget(Number(select.value));
  } catch (err) {
    toastCatch(err);
    return;
  }
  void runParaphrase().catch(toastCatch);
});

resultBox.addEventListener("click", (ev) => {
  const btn = (ev.target as HTMLElement).closest<HTMLButtonElement>("button");
  if (!btn) return;
  try {
    if (btn.classList.contains("accept")) session.accept();
    else if (btn.classList.contains("rerun")) void runParaphrase().catch(toastCatch);
    else if (btn.classList.contains("edit")) session.edit();
  } catch (err) {
    toastCatch(err);
    return;
  }
  refresh();
});

toastBox.addEventListener("click", (ev) => {
  const btn = (ev.target as HTMLElement).closest<HTMLButtonElement>("button.toast-retry");
  if (btn && retry) retry();
});

void (async () => {
  const outcome = await session.init();
  refresh();
  if (outcome !== "ok") {
    retry = () =>
      void session.init().then(() => {
        refresh();
      });
  }
})();

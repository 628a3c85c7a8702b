"""Evaluation harness: encode prefixed queries, generate paraphrases,
re-classify the predictions, and reduce everything to the seven-metric
table.

Paraphrase metrics compare the prediction against the TARGET text by
default; ``reference="input"`` compares against the source instead (both
readings of the protocol are preserved, neither silently chosen for the
caller). Per-pair generation/classification results can be cached on disk,
keyed by (model, pair id, reference mode), so interrupted runs resume.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional, Sequence

from . import metrics, prefix
from .classify import Classifier, EmotionLabel, NO_LABEL
from .corpus import PairRecord, restrict_to_graph
from .errors import GatewayError
from .generate import DEFAULT_MAX_LENGTH, Generator
from .graph import TransitionGraph
from .metrics import METRIC_NAMES, MetricValue

REFERENCE_MODES = ("target", "input")


class EmptyDatasetError(ValueError):
    """No pairs left to evaluate (empty input or empty after restriction)."""


class EvalAbortedError(RuntimeError):
    """A gateway failed mid-run; carries how far the run got."""

    def __init__(self, message: str, completed: int, total: int):
        super().__init__(message)
        self.completed = completed
        self.total = total


@dataclass(frozen=True)
class EvalRun:
    model_name: str
    dataset_name: str
    restricted: bool
    metrics: tuple[MetricValue, ...]
    pair_count: int
    timestamp: str

    def __post_init__(self):
        if self.pair_count <= 0:
            raise ValueError("pair_count must be positive")
        names = tuple(m.name for m in self.metrics)
        if names != METRIC_NAMES:
            raise ValueError(f"expected metrics {METRIC_NAMES}, got {names}")

    def metric(self, name: str) -> float:
        for m in self.metrics:
            if m.name == name:
                return m.value
        raise KeyError(name)


class EvalCache:
    """Disk-backed per-pair cache: one JSONL line per completed pair."""

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._entries: dict[tuple[str, str, str], dict] = {}
        if path:
            try:
                with open(path, encoding="utf-8") as fh:
                    for line in fh:
                        if not line.strip():
                            continue
                        doc = json.loads(line)
                        key = (doc["model"], doc["pair_id"], doc["reference"])
                        self._entries[key] = doc
            except FileNotFoundError:
                pass

    def get(self, model: str, pair_id: str, reference: str) -> Optional[dict]:
        return self._entries.get((model, pair_id, reference))

    def put(self, model: str, pair_id: str, reference: str, prediction: str,
            label: EmotionLabel) -> None:
        doc = {
            "model": model,
            "pair_id": pair_id,
            "reference": reference,
            "prediction": prediction,
            "pred_emotion": label.emotion,
            "pred_score": label.score,
        }
        self._entries[(model, pair_id, reference)] = doc
        if self.path:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(doc, ensure_ascii=False) + "\n")

    def __len__(self) -> int:
        return len(self._entries)


def _cached_label(doc: dict) -> EmotionLabel:
    if doc["pred_emotion"] is None:
        return NO_LABEL
    return EmotionLabel(doc["pred_emotion"], doc["pred_score"])


def evaluate(
    records: Sequence[PairRecord],
    generator: Generator,
    classifier: Classifier,
    graph: Optional[TransitionGraph] = None,
    restricted: bool = False,
    reference: str = "target",
    model_name: str = "model",
    dataset_name: str = "custom",
    threshold: float = 0.5,
    max_length: int = DEFAULT_MAX_LENGTH,
    cache: Optional[EvalCache] = None,
    batch_size: int = 16,
) -> EvalRun:
    """Run the full protocol over labeled pairs and return one EvalRun."""
    if reference not in REFERENCE_MODES:
        raise ValueError(f"reference must be one of {REFERENCE_MODES}, got {reference!r}")
    records = list(records)
    if restricted:
        if graph is None:
            raise ValueError("restricted evaluation needs a transition graph")
        records, _ = restrict_to_graph(records, graph)
        if not records:
            raise EmptyDatasetError("no pairs survive the graph restriction")
    if not records:
        raise EmptyDatasetError("no pairs to evaluate")
    for r in records:
        if r.source_emotion.emotion is None or r.target_emotion.emotion is None:
            raise ValueError(f"record {r.id!r} is missing emotion labels; label the corpus first")

    # empty caches are falsy (len 0), so test identity rather than truth
    cache = cache if cache is not None else EvalCache()
    predictions: dict[str, tuple[str, EmotionLabel]] = {}
    pending = []
    for r in records:
        hit = cache.get(model_name, r.id, reference)
        if hit is not None:
            predictions[r.id] = (hit["prediction"], _cached_label(hit))
        else:
            pending.append(r)

    done = len(predictions)
    total = len(records)
    for start in range(0, len(pending), batch_size):
        chunk = pending[start : start + batch_size]
        lines = [
            prefix.encode(r.source, r.source_emotion.emotion, r.target_emotion.emotion)
            for r in chunk
        ]
        try:
            results = generator.generate_batch(lines, max_length)
            labels = classifier.classify_label([g.output for g in results], threshold)
        except GatewayError as exc:
            raise EvalAbortedError(
                f"gateway failure after {done}/{total} pairs: {exc}", done, total
            ) from exc
        for r, res, label in zip(chunk, results, labels):
            predictions[r.id] = (res.output, label)
            cache.put(model_name, r.id, reference, res.output, label)
            done += 1

    pred_emotions = [predictions[r.id][1].emotion for r in records]
    target_emotions = [r.target_emotion.emotion for r in records]
    em = metrics.exact_match(pred_emotions, target_emotions)

    pairs = []
    for r in records:
        hyp = predictions[r.id][0]
        ref = r.target if reference == "target" else r.source
        pairs.append((metrics.tokenize(hyp), metrics.tokenize(ref)))
    six = metrics.score_corpus(pairs)

    values = (
        em,
        MetricValue("bleu", six.bleu),
        MetricValue("gleu", six.gleu),
        MetricValue("rouge1", six.rouge1),
        MetricValue("rouge2", six.rouge2),
        MetricValue("rougeL", six.rougeL),
        MetricValue("meteor", six.meteor),
    )
    return EvalRun(
        model_name=model_name,
        dataset_name=dataset_name,
        restricted=restricted,
        metrics=values,
        pair_count=total,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )


@dataclass(frozen=True)
class EvalReport:
    runs: tuple[EvalRun, ...]

    def grid(self) -> dict:
        """metric -> model -> dataset -> value."""
        out: dict = {name: {} for name in METRIC_NAMES}
        for run in self.runs:
            for m in run.metrics:
                out[m.name].setdefault(run.model_name, {})[run.dataset_name] = m.value
        return out

    def models(self) -> list[str]:
        return sorted({r.model_name for r in self.runs})

    def datasets(self) -> list[str]:
        return sorted({r.dataset_name for r in self.runs})


def compare(runs: Sequence[EvalRun]) -> EvalReport:
    """Collect runs into a report grid; on duplicate (model, dataset) the
    latest run wins and a warning is emitted."""
    if not runs:
        raise ValueError("compare needs at least one run")
    chosen: dict[tuple[str, str], EvalRun] = {}
    for run in runs:
        key = (run.model_name, run.dataset_name)
        if key in chosen:
            warnings.warn(f"duplicate run for {key}; keeping the latest", stacklevel=2)
        chosen[key] = run
    ordered = [r for r in runs if chosen[(r.model_name, r.dataset_name)] is r]
    return EvalReport(tuple(ordered))


def report_csv(report: EvalReport) -> str:
    """Deterministic CSV: metric,model,dataset,value with %.6f values and no
    timestamps, so identical runs produce identical bytes."""
    lines = ["metric,model,dataset,value"]
    grid = report.grid()
    for name in METRIC_NAMES:
        for model in sorted(grid[name]):
            for dataset in sorted(grid[name][model]):
                lines.append(f"{name},{model},{dataset},{grid[name][model][dataset]:.6f}")
    return "\n".join(lines) + "\n"


def report_json(report: EvalReport) -> str:
    doc = {
        "runs": [
            {
                "model_name": r.model_name,
                "dataset_name": r.dataset_name,
                "restricted": r.restricted,
                "pair_count": r.pair_count,
                "timestamp": r.timestamp,
                "metrics": {m.name: m.value for m in r.metrics},
            }
            for r in report.runs
        ],
        "grid": report.grid(),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def report_text(report: EvalReport) -> str:
    """Aligned table, one block per metric: model rows, dataset columns."""
    models = report.models()
    datasets = report.datasets()
    grid = report.grid()
    width = max([len(m) for m in models + datasets] + [10]) + 2
    out = []
    for name in METRIC_NAMES:
        out.append(name)
        out.append("".join([" " * width] + [d.rjust(width) for d in datasets]))
        for model in models:
            row = [model.ljust(width)]
            for dataset in datasets:
                value = grid[name].get(model, {}).get(dataset)
                row.append(("-" if value is None else f"{value:.4f}").rjust(width))
            out.append("".join(row))
        out.append("")
    return "\n".join(out)


def write_report(report: EvalReport, out_dir: str) -> dict[str, str]:
    """Write report.csv / report.json / report.txt; returns the paths."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    for fname, content in (
        ("report.csv", report_csv(report)),
        ("report.json", report_json(report)),
        ("report.txt", report_text(report)),
    ):
        path = os.path.join(out_dir, fname)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
        paths[fname] = path
    return paths

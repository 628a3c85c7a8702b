"""Corpus pipeline: ingest paraphrase corpora, label both sides with a
classifier, apply the drop filters and PWI cutoff, split deterministically,
restrict to graph-valid transitions, and export canonical JSONL.

Ingestion accepts five layouts (malformed rows are counted and skipped,
never fatal; only positive paraphrase pairs survive):
  paws         TSV id, sentence1, sentence2, label        (label=1 kept)
  mrpc         TSV quality, id1, id2, string1, string2    (header line; quality=1)
  qqp          TSV/CSV id, qid1, qid2, question1, question2, is_duplicate
  twitter-url  TSV sentence1, sentence2, votes "(y, t)" or a float PWI score
  generic      canonical JSONL (the export format below)

Filtering applies rules in a fixed order and counts each dropped record at
the FIRST rule that fires: rater majority, PWI cutoff, blank emotion,
neutral-to-neutral, matching emotions.
"""

from __future__ import annotations

import csv
import json
import math
import random
import re
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .classify import NO_LABEL, Classifier, EmotionLabel
from .graph import TransitionGraph, is_valid_transition
from .taxonomy import NEUTRAL_ID

ORIGINS = ("paws", "mrpc", "qqp", "twitter-url", "generic")
SPLITS = ("train", "test", "unsplit")

# canonical JSONL field order; export depends on this exact sequence
_FIELDS = (
    "id", "source", "target", "source_emotion", "target_emotion",
    "pwi", "rater_votes", "origin", "split",
)


class CorpusError(ValueError):
    """Unreadable file, unknown format, or records unfit for an operation."""


@dataclass(frozen=True)
class PairRecord:
    id: str
    source: str
    target: str
    source_emotion: EmotionLabel = NO_LABEL
    target_emotion: EmotionLabel = NO_LABEL
    pwi: Optional[float] = None
    rater_votes: Optional[tuple[int, int]] = None
    origin: str = "generic"
    split: str = "unsplit"

    def __post_init__(self):
        if not self.source or not self.target:
            raise ValueError(f"record {self.id!r}: source and target must be non-empty")
        if self.pwi is not None and not 0.0 <= self.pwi <= 1.0:
            raise ValueError(f"record {self.id!r}: pwi {self.pwi} outside [0,1]")
        if self.rater_votes is not None:
            yes, total = self.rater_votes
            if yes < 0 or total < 1 or yes > total:
                raise ValueError(f"record {self.id!r}: bad rater votes {self.rater_votes}")
        if self.origin not in ORIGINS:
            raise ValueError(f"record {self.id!r}: unknown origin {self.origin!r}")
        if self.split not in SPLITS:
            raise ValueError(f"record {self.id!r}: unknown split {self.split!r}")


@dataclass(frozen=True)
class FilterStats:
    input_count: int
    kept_count: int
    dropped_blank_emotion: int = 0
    dropped_neutral_neutral: int = 0
    dropped_matching_emotion: int = 0
    dropped_pwi: int = 0
    dropped_rater_minority: int = 0

    def __post_init__(self):
        dropped = (
            self.dropped_blank_emotion
            + self.dropped_neutral_neutral
            + self.dropped_matching_emotion
            + self.dropped_pwi
            + self.dropped_rater_minority
        )
        if self.input_count != self.kept_count + dropped:
            raise ValueError(
                f"filter stats do not balance: {self.input_count} != "
                f"{self.kept_count} + {dropped}"
            )

    def as_dict(self) -> dict:
        return {
            "input_count": self.input_count,
            "kept_count": self.kept_count,
            "dropped_rater_minority": self.dropped_rater_minority,
            "dropped_pwi": self.dropped_pwi,
            "dropped_blank_emotion": self.dropped_blank_emotion,
            "dropped_neutral_neutral": self.dropped_neutral_neutral,
            "dropped_matching_emotion": self.dropped_matching_emotion,
        }


# ----------------------------------------------------------------- ingest

_VOTES_RE = re.compile(r"^\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def _rows(path: str, delimiter: str):
    with open(path, encoding="utf-8", newline="") as fh:
        yield from csv.reader(fh, delimiter=delimiter)


def _ingest_paws(path: str):
    records, skipped = [], 0
    for lineno, row in enumerate(_rows(path, "\t"), start=1):
        if lineno == 1 and row and row[-1].strip().lower() == "label":
            continue  # optional header
        if len(row) != 4:
            skipped += 1
            continue
        rid, s1, s2, label = (c.strip() for c in row)
        if label not in ("0", "1"):
            skipped += 1
            continue
        if label != "1":
            continue  # well-formed negative pair
        if not s1 or not s2:
            skipped += 1
            continue
        records.append(PairRecord(f"paws-{rid}", s1, s2, origin="paws"))
    return records, skipped


def _ingest_mrpc(path: str):
    records, skipped = [], 0
    for lineno, row in enumerate(_rows(path, "\t"), start=1):
        if lineno == 1:
            continue  # layout always carries one header line
        if len(row) != 5:
            skipped += 1
            continue
        quality, id1, id2, s1, s2 = (c.strip() for c in row)
        if quality not in ("0", "1"):
            skipped += 1
            continue
        if quality != "1":
            continue
        if not s1 or not s2:
            skipped += 1
            continue
        records.append(PairRecord(f"mrpc-{id1}-{id2}", s1, s2, origin="mrpc"))
    return records, skipped


def _ingest_qqp(path: str):
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    delim = "\t" if "\t" in first else ","
    records, skipped = [], 0
    for lineno, row in enumerate(_rows(path, delim), start=1):
        if lineno == 1 and row and row[-1].strip().lower() == "is_duplicate":
            continue
        if len(row) != 6:
            skipped += 1
            continue
        rid, _q1, _q2, s1, s2, dup = (c.strip() for c in row)
        if dup not in ("0", "1"):
            skipped += 1
            continue
        if dup != "1":
            continue
        if not s1 or not s2:
            skipped += 1
            continue
        records.append(PairRecord(f"qqp-{rid}", s1, s2, origin="qqp"))
    return records, skipped


def _ingest_twitter(path: str):
    records, skipped = [], 0
    for lineno, row in enumerate(_rows(path, "\t"), start=1):
        if len(row) != 3:
            skipped += 1
            continue
        s1, s2, third = (c.strip() for c in row)
        if not s1 or not s2:
            skipped += 1
            continue
        votes = None
        pwi = None
        m = _VOTES_RE.match(third)
        if m:
            yes, total = int(m.group(1)), int(m.group(2))
            if yes > total or total < 1:
                skipped += 1
                continue
            votes = (yes, total)
        else:
            try:
                pwi = float(third)
            except ValueError:
                skipped += 1
                continue
            if not 0.0 <= pwi <= 1.0 or math.isnan(pwi):
                skipped += 1
                continue
        records.append(
            PairRecord(
                f"twitter-url-{lineno}", s1, s2,
                pwi=pwi, rater_votes=votes, origin="twitter-url",
            )
        )
    return records, skipped


def _label_from_json(value) -> EmotionLabel:
    if value is None:
        return NO_LABEL
    return EmotionLabel(int(value["id"]), float(value["score"]))


def _label_to_json(label: EmotionLabel):
    if label.emotion is None:
        return None
    return {"id": label.emotion, "score": label.score}


def _ingest_generic(path: str):
    records, skipped = [], 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
                votes = doc.get("rater_votes")
                records.append(
                    PairRecord(
                        id=str(doc["id"]),
                        source=doc["source"],
                        target=doc["target"],
                        source_emotion=_label_from_json(doc.get("source_emotion")),
                        target_emotion=_label_from_json(doc.get("target_emotion")),
                        pwi=doc.get("pwi"),
                        rater_votes=tuple(votes) if votes else None,
                        origin=doc.get("origin", "generic"),
                        split=doc.get("split", "unsplit"),
                    )
                )
            except (ValueError, KeyError, TypeError):
                skipped += 1
    return records, skipped


_INGESTERS = {
    "paws": _ingest_paws,
    "mrpc": _ingest_mrpc,
    "qqp": _ingest_qqp,
    "twitter-url": _ingest_twitter,
    "generic": _ingest_generic,
}


def ingest(path: str, origin: str, split: str = "unsplit"):
    """Read one corpus file; returns (records, skipped_malformed_count).

    ``split`` tags every ingested record, supporting corpora shipped as
    separate train/test files.
    """
    if origin not in _INGESTERS:
        raise CorpusError(f"unknown format {origin!r} (expected one of {ORIGINS})")
    try:
        records, skipped = _INGESTERS[origin](path)
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    if split != "unsplit":
        records = [replace(r, split=split) for r in records]
    return records, skipped


# ------------------------------------------------------------------ label

def label_pairs(
    records: Sequence[PairRecord],
    classifier: Classifier,
    threshold: float = 0.5,
    batch_size: int = 64,
) -> list[PairRecord]:
    """Populate both emotion labels on every record, order-preserving."""
    out: list[PairRecord] = []
    for start in range(0, len(records), batch_size):
        chunk = records[start : start + batch_size]
        texts = [r.source for r in chunk] + [r.target for r in chunk]
        try:
            labels = classifier.classify_label(texts, threshold)
        except Exception as exc:
            ids = ", ".join(r.id for r in chunk[:3])
            more = "..." if len(chunk) > 3 else ""
            raise type(exc)(f"while labeling records [{ids}{more}]: {exc}") from exc
        n = len(chunk)
        for i, rec in enumerate(chunk):
            out.append(
                replace(rec, source_emotion=labels[i], target_emotion=labels[n + i])
            )
    return out


# ----------------------------------------------------------------- filter

def filter_pairs(
    records: Sequence[PairRecord],
    pwi_threshold: Optional[float] = None,
    require_majority: bool = False,
) -> tuple[list[PairRecord], FilterStats]:
    """Apply the drop rules in order: rater majority, PWI cutoff, blank
    emotion, neutral-to-neutral, matching emotions. Each dropped record is
    counted once, at the first rule that fires."""
    kept = []
    minority = pwi_drop = blank = both_neutral = matching = 0
    for r in records:
        if require_majority and r.rater_votes is not None:
            yes, total = r.rater_votes
            if yes * 2 <= total:  # ties are not a majority
                minority += 1
                continue
        if pwi_threshold is not None and r.pwi is not None and r.pwi < pwi_threshold:
            pwi_drop += 1
            continue
        se, te = r.source_emotion.emotion, r.target_emotion.emotion
        if se is None or te is None:
            blank += 1
            continue
        if se == NEUTRAL_ID and te == NEUTRAL_ID:
            both_neutral += 1
            continue
        if se == te:
            matching += 1
            continue
        kept.append(r)
    stats = FilterStats(
        input_count=len(records),
        kept_count=len(kept),
        dropped_blank_emotion=blank,
        dropped_neutral_neutral=both_neutral,
        dropped_matching_emotion=matching,
        dropped_pwi=pwi_drop,
        dropped_rater_minority=minority,
    )
    return kept, stats


# ------------------------------------------------------------------ split

@dataclass(frozen=True)
class PresplitPolicy:
    """Honor each record's existing split tag; 'unsplit' records are an error."""


@dataclass(frozen=True)
class RandomSplitPolicy:
    ratio: float = 0.75  # train fraction
    seed: int = 42

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"ratio must be in (0,1), got {self.ratio}")


def split_pairs(records: Sequence[PairRecord], policy) -> tuple[list[PairRecord], list[PairRecord]]:
    if isinstance(policy, PresplitPolicy):
        train = [r for r in records if r.split == "train"]
        test = [r for r in records if r.split == "test"]
        stray = len(records) - len(train) - len(test)
        if stray:
            raise CorpusError(
                f"presplit policy found {stray} records tagged 'unsplit'; "
                "tag them at ingest or use a random split"
            )
        return train, test
    if isinstance(policy, RandomSplitPolicy):
        shuffled = list(records)
        random.Random(policy.seed).shuffle(shuffled)
        n_train = math.floor(len(shuffled) * policy.ratio)
        train = [replace(r, split="train") for r in shuffled[:n_train]]
        test = [replace(r, split="test") for r in shuffled[n_train:]]
        return train, test
    raise CorpusError(f"unknown split policy {policy!r}")


def swap_for_limited_data(
    train: Sequence[PairRecord], test: Sequence[PairRecord]
) -> tuple[list[PairRecord], list[PairRecord]]:
    """Limited-data configuration: the small set trains, the large one tests.
    A pure swap; split tags are left as-is so provenance stays visible."""
    return list(test), list(train)


# --------------------------------------------------------------- restrict

def restrict_to_graph(
    records: Sequence[PairRecord], g: TransitionGraph
) -> tuple[list[PairRecord], float]:
    """Keep records whose (source, target) emotions form a graph edge.
    kept_fraction is 1.0 on empty input by convention."""
    kept = [
        r
        for r in records
        if r.source_emotion.emotion is not None
        and r.target_emotion.emotion is not None
        and is_valid_transition(g, r.source_emotion.emotion, r.target_emotion.emotion)
    ]
    fraction = len(kept) / len(records) if records else 1.0
    return kept, fraction


# ----------------------------------------------------------------- export

def record_to_dict(r: PairRecord) -> dict:
    return {
        "id": r.id,
        "source": r.source,
        "target": r.target,
        "source_emotion": _label_to_json(r.source_emotion),
        "target_emotion": _label_to_json(r.target_emotion),
        "pwi": r.pwi,
        "rater_votes": list(r.rater_votes) if r.rater_votes else None,
        "origin": r.origin,
        "split": r.split,
    }


def export(records: Sequence[PairRecord], path: str) -> int:
    """Write canonical JSONL (fixed field order, UTF-8, one record per line);
    re-ingesting with the generic format round-trips byte-identically."""
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(record_to_dict(r), ensure_ascii=False) + "\n")
    return len(records)


def corpus_stats(records: Sequence[PairRecord]) -> dict:
    """Summary counts for the `corpus stats` command."""
    by_origin: dict[str, int] = {}
    by_split: dict[str, int] = {}
    labeled = with_pwi = with_votes = 0
    for r in records:
        by_origin[r.origin] = by_origin.get(r.origin, 0) + 1
        by_split[r.split] = by_split.get(r.split, 0) + 1
        if r.source_emotion.emotion is not None and r.target_emotion.emotion is not None:
            labeled += 1
        if r.pwi is not None:
            with_pwi += 1
        if r.rater_votes is not None:
            with_votes += 1
    return {
        "total": len(records),
        "by_origin": dict(sorted(by_origin.items())),
        "by_split": dict(sorted(by_split.items())),
        "labeled_both": labeled,
        "with_pwi": with_pwi,
        "with_rater_votes": with_votes,
    }

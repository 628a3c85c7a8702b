#!/usr/bin/env python3
"""Generate a small labeled paraphrase corpus for pipeline experiments.

The output is canonical JSONL ready for `emogradient corpus ...` and
`emogradient evaluate`. Roughly a third of the records carry rater votes,
a third carry a word-overlap score, and a handful are deliberately
blank-labeled, neutral-neutral, or emotion-matching so the filter rules
all have something to do.

Usage:
    python3 scripts/make_toy_corpus.py --out data/toy.jsonl
    python3 scripts/make_toy_corpus.py --pairs 120 --seed 7
"""

import argparse
import os
import random

from emogradient import corpus
from emogradient.classify import EmotionLabel
from emogradient.corpus import PairRecord
from emogradient.taxonomy import emotion_by_name

# (source, target) name pairs; the last few are deliberately not
# graph-valid so restriction has work to do downstream
TRANSITIONS = [
    ("anger", "annoyance"),
    ("anger", "disgust"),
    ("disgust", "disapproval"),
    ("fear", "nervousness"),
    ("grief", "sadness"),
    ("excitement", "joy"),
    ("anger", "neutral"),
    ("sadness", "neutral"),
    ("annoyance", "anger"),
    ("joy", "fear"),
]

TEMPLATES = [
    ("this meal made me furious beyond words .", "this meal was rather disappointing ."),
    ("i am terrified of the storm tonight .", "the storm tonight makes me a bit uneasy ."),
    ("the delay ruined my entire week completely .", "the delay was an inconvenience this week ."),
    ("what a disgusting mess they left behind .", "they left an untidy mess behind them ."),
    ("losing the match crushed our whole team .", "losing the match disappointed our team somewhat ."),
    ("the surprise party thrilled everyone there .", "the party pleased everyone who attended it ."),
]


def label_for(name, rng):
    if name is None:
        return EmotionLabel(None, None)
    return EmotionLabel(emotion_by_name(name).id, round(rng.uniform(0.55, 0.98), 3))


def build_toy_records(n, seed):
    rng = random.Random(seed)
    records = []
    for i in range(n):
        src_name, tgt_name = TRANSITIONS[i % len(TRANSITIONS)]
        src_text, tgt_text = TEMPLATES[i % len(TEMPLATES)]
        src_text = f"{src_text[:-2]}(case {i}) ."
        tgt_text = f"{tgt_text[:-2]}(case {i}) ."

        bucket = i % 10
        if bucket == 7:      # unlabeled: the filter should drop these
            src_label, tgt_label = label_for(None, rng), label_for(None, rng)
        elif bucket == 8:    # both neutral
            src_label = tgt_label = label_for("neutral", rng)
        elif bucket == 9:    # label did not move
            src_label = tgt_label = label_for(src_name, rng)
        else:
            src_label = label_for(src_name, rng)
            tgt_label = label_for(tgt_name, rng)

        votes = (rng.randint(2, 6), 6) if i % 3 == 0 else None
        pwi = round(rng.uniform(0.55, 0.95), 3) if i % 3 == 1 else None
        records.append(
            PairRecord(
                id=f"toy-{i:04d}",
                source=src_text,
                target=tgt_text,
                source_emotion=src_label,
                target_emotion=tgt_label,
                pwi=pwi,
                rater_votes=votes,
                origin="generic",
                split="unsplit",
            )
        )
    return records


def main() -> int:
    parser = argparse.ArgumentParser(description="Write a synthetic labeled paraphrase corpus")
    parser.add_argument("--out", default="data/toy.jsonl")
    parser.add_argument("--pairs", type=int, default=60)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    records = build_toy_records(args.pairs, args.seed)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    corpus.export(records, args.out)

    stats = corpus.corpus_stats(records)
    print(f"wrote {stats['total']} records to {args.out}")
    print(f"  labeled both sides: {stats['labeled_both']}")
    print(f"  with overlap score: {stats['with_pwi']}")
    print(f"  with rater votes:   {stats['with_rater_votes']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

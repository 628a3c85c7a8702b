#!/usr/bin/env python3
"""Run the full pipeline over a toy corpus and print the metric table.

Filters the corpus, optionally restricts it to graph-valid transitions,
then evaluates two stub models against it: an oracle that returns the
reference target (the ceiling) and an echo that returns the input
unchanged (the floor). Classification uses a fixed lookup derived from
the dataset's own labels, so the whole run is offline and deterministic.

Usage:
    python3 scripts/make_toy_corpus.py --out data/toy.jsonl
    python3 scripts/run_toy_eval.py --dataset data/toy.jsonl --out data/toy-report
"""

import argparse

from emogradient import corpus, harness
from emogradient.classify import FixedClassifier
from emogradient.generate import EchoGenerator, OracleGenerator
from emogradient.graph import build_default


def fixed_from_labels(records):
    table = {}
    for r in records:
        for text, label in ((r.source, r.source_emotion), (r.target, r.target_emotion)):
            if label.emotion is not None:
                table[text] = {label.emotion: label.score}
    return FixedClassifier(table)


def main() -> int:
    parser = argparse.ArgumentParser(description="Evaluate stub models over a toy corpus")
    parser.add_argument("--dataset", default="data/toy.jsonl")
    parser.add_argument("--out", default="data/toy-report")
    parser.add_argument("--pwi-threshold", type=float, default=0.8)
    parser.add_argument("--restricted", action="store_true",
                        help="drop pairs whose transition the graph forbids")
    args = parser.parse_args()

    records, skipped = corpus.ingest(args.dataset, "generic")
    if skipped:
        print(f"warning: skipped {skipped} malformed lines")
    kept, stats = corpus.filter_pairs(
        records, pwi_threshold=args.pwi_threshold, require_majority=True
    )
    print(f"filtered {stats.input_count} -> {stats.kept_count} "
          f"(minority {stats.dropped_rater_minority}, pwi {stats.dropped_pwi}, "
          f"blank {stats.dropped_blank_emotion}, neutral {stats.dropped_neutral_neutral}, "
          f"matching {stats.dropped_matching_emotion})")

    graph = build_default()
    classifier = fixed_from_labels(kept)
    oracle = OracleGenerator({r.source: r.target for r in kept})

    runs = []
    for model_name, generator in (("oracle", oracle), ("echo", EchoGenerator())):
        runs.append(
            harness.evaluate(
                kept,
                generator,
                classifier,
                graph=graph,
                restricted=args.restricted,
                model_name=model_name,
                dataset_name="toy",
            )
        )

    report = harness.compare(runs)
    paths = harness.write_report(report, args.out)
    print(f"wrote {', '.join(sorted(paths.values()))}\n")
    print(harness.report_text(report))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

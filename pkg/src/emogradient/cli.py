"""Command-line entry point.

Subcommands: corpus (ingest/label/filter/split/restrict/stats), graph
(export/validate/suggest), paraphrase, metrics score, evaluate, serve.

Exit codes: 0 success, 1 usage error, 2 data error, 3 backend error.
Machine-readable output (JSON/CSV, newline-terminated) goes to stdout;
diagnostics, including the resolved seed, go to stderr. No color is ever
emitted, so NO_COLOR is honored trivially.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import corpus as corpus_mod
from . import harness, metrics, prefix
from .classify import ClassifierConfig, FixedClassifier, make_classifier
from .errors import GatewayError
from .generate import GeneratorConfig, make_generator
from .graph import (
    GraphConfigError,
    build_default,
    graph_to_json,
    is_valid_transition,
    load_graph,
    targets_of,
)
from .service import create_app
from .taxonomy import EMOTIONS, UnknownEmotionError, resolve

log = logging.getLogger("emogradient")

DEFAULT_SEED = 42

# keys a --config JSON file may set; command line always wins
_CONFIG_KEYS = (
    "seed", "classifier", "generator", "threshold", "graph",
    "classifier_endpoint", "generator_endpoint",
)


def _pick(cli_value, cfg: dict, key: str, default):
    if cli_value is not None:
        return cli_value
    if key in cfg:
        return cfg[key]
    return default


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("--config must hold a JSON object")
    unknown = set(doc) - set(_CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return doc


def _load_graph_arg(path: Optional[str]):
    if not path:
        return build_default()
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def _read_generic(path: str) -> list[corpus_mod.PairRecord]:
    records, skipped = corpus_mod.ingest(path, "generic")
    if skipped:
        print(f"warning: skipped {skipped} malformed lines in {path}", file=sys.stderr)
    return records


def _load_fixed_map(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _build_classifier(args, cfg: dict, dataset: Optional[list] = None):
    backend = _pick(getattr(args, "classifier", None), cfg, "classifier", "lexicon")
    endpoint = _pick(
        getattr(args, "classifier_endpoint", None), cfg, "classifier_endpoint", None
    )
    config = ClassifierConfig(backend=backend, endpoint=endpoint)
    if backend == "fixed":
        map_path = getattr(args, "fixed_map", None)
        if map_path:
            return FixedClassifier(_load_fixed_map(map_path))
        if dataset is not None:
            # fixed classifier consistent with the dataset's own labels
            table: dict = {}
            for r in dataset:
                for text, label in ((r.source, r.source_emotion), (r.target, r.target_emotion)):
                    if label.emotion is not None:
                        table[text] = {label.emotion: label.score}
            return FixedClassifier(table)
        raise ValueError("fixed classifier needs --fixed-map (or a labeled dataset)")
    return make_classifier(config)


def _build_generator(args, cfg: dict, dataset: Optional[list] = None):
    backend = _pick(getattr(args, "generator", None), cfg, "generator", "echo")
    endpoint = _pick(
        getattr(args, "generator_endpoint", None), cfg, "generator_endpoint", None
    )
    config = GeneratorConfig(backend=backend, endpoint=endpoint)
    table = None
    if backend == "oracle":
        table_path = getattr(args, "oracle_table", None)
        if table_path:
            records = _read_generic(table_path)
        elif dataset is not None:
            records = dataset
        else:
            raise ValueError("oracle generator needs --oracle-table (or a dataset)")
        table = {r.source: r.target for r in records}
    return make_generator(config, oracle_table=table)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")


# ------------------------------------------------------------------ corpus

def cmd_corpus_ingest(args, cfg):
    records, skipped = corpus_mod.ingest(args.input, args.format, split=args.split)
    count = corpus_mod.export(records, args.out)
    _emit({"ingested": count, "skipped": skipped, "out": args.out})
    return 0


def cmd_corpus_label(args, cfg):
    records = _read_generic(args.input)
    classifier = _build_classifier(args, cfg)
    threshold = _pick(args.threshold, cfg, "threshold", 0.5)
    labeled = corpus_mod.label_pairs(records, classifier, threshold)
    corpus_mod.export(labeled, args.out)
    labeled_both = sum(
        1
        for r in labeled
        if r.source_emotion.emotion is not None and r.target_emotion.emotion is not None
    )
    _emit({"labeled": len(labeled), "labeled_both": labeled_both, "out": args.out})
    return 0


def cmd_corpus_filter(args, cfg):
    records = _read_generic(args.input)
    kept, stats = corpus_mod.filter_pairs(
        records,
        pwi_threshold=args.pwi_threshold,
        require_majority=args.require_majority,
    )
    corpus_mod.export(kept, args.out)
    _emit(stats.as_dict())
    return 0


def cmd_corpus_split(args, cfg, seed):
    records = _read_generic(args.input)
    if args.policy == "presplit":
        policy = corpus_mod.PresplitPolicy()
    else:
        policy = corpus_mod.RandomSplitPolicy(ratio=args.ratio, seed=seed)
    train, test = corpus_mod.split_pairs(records, policy)
    if args.swap:
        train, test = corpus_mod.swap_for_limited_data(train, test)
    corpus_mod.export(train, args.train_out)
    corpus_mod.export(test, args.test_out)
    _emit({"train": len(train), "test": len(test), "swapped": args.swap})
    return 0


def cmd_corpus_restrict(args, cfg):
    records = _read_generic(args.input)
    g = _load_graph_arg(_pick(args.graph, cfg, "graph", None))
    kept, fraction = corpus_mod.restrict_to_graph(records, g)
    corpus_mod.export(kept, args.out)
    _emit({"kept": len(kept), "input": len(records), "kept_fraction": fraction})
    return 0


def cmd_corpus_stats(args, cfg):
    records = _read_generic(args.input)
    _emit(corpus_mod.corpus_stats(records))
    return 0


# ------------------------------------------------------------------- graph

def cmd_graph_export(args, cfg):
    g = _load_graph_arg(_pick(args.graph, cfg, "graph", None))
    text = graph_to_json(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_graph_validate(args, cfg):
    with open(args.graph_file, encoding="utf-8") as fh:
        g = load_graph(fh.read())
    _emit({"valid": True, "nodes": g.node_count, "edges": len(g.edges)})
    return 0


def cmd_graph_suggest(args, cfg):
    g = _load_graph_arg(_pick(args.graph, cfg, "graph", None))
    src = resolve(args.emotion)
    suggestions = [
        {
            "target": s.target,
            "target_name": EMOTIONS[s.target].name,
            "hops": s.hops,
            "rationale": s.rationale,
        }
        for s in targets_of(g, src.id)
    ]
    _emit({"source": {"id": src.id, "name": src.name}, "suggestions": suggestions})
    return 0


# -------------------------------------------------------------- paraphrase

def cmd_paraphrase(args, cfg):
    g = _load_graph_arg(_pick(args.graph, cfg, "graph", None))
    classifier = _build_classifier(args, cfg)
    generator = _build_generator(args, cfg)
    threshold = _pick(args.threshold, cfg, "threshold", 0.5)
    target = resolve(args.target).id
    if args.source is not None:
        source = resolve(args.source).id
    else:
        label = classifier.classify_label([args.text], threshold)[0]
        if label.emotion is None:
            raise ValueError(
                "no dominant emotion found for the text; pass --source explicitly"
            )
        source = label.emotion
    line = prefix.encode(args.text, source, target)
    result = generator.generate_batch([line])[0]
    _emit(
        {
            "output": result.output,
            "prefix": line,
            "source": {"id": source, "name": EMOTIONS[source].name},
            "target": {"id": target, "name": EMOTIONS[target].name},
            "graph_valid": is_valid_transition(g, source, target),
        }
    )
    return 0


# ----------------------------------------------------------------- metrics

def _read_jsonl(path: str) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(json.loads(line))
    return out


def cmd_metrics_score(args, cfg):
    preds = _read_jsonl(args.pred)
    refs = {doc["id"]: doc for doc in _read_jsonl(args.ref)}
    if len(refs) != len(preds) or any(doc["id"] not in refs for doc in preds):
        raise ValueError("--pred and --ref ids do not match one-to-one")
    pairs = []
    pred_emotions = []
    target_emotions = []
    for doc in preds:
        ref_doc = refs[doc["id"]]
        pairs.append((metrics.tokenize(doc["hypothesis"]), metrics.tokenize(ref_doc["reference"])))
        if args.emotions and ("pred_emotion" not in doc or "target_emotion" not in ref_doc):
            raise ValueError(f"record {doc['id']!r} lacks emotion fields (required by --emotions)")
        pred_emotions.append(doc.get("pred_emotion"))
        target_emotions.append(ref_doc.get("target_emotion"))
    six = metrics.score_corpus(pairs)
    _emit(
        {
            "exact_match": metrics.exact_match(pred_emotions, target_emotions).value,
            "bleu": six.bleu,
            "gleu": six.gleu,
            "rouge1": six.rouge1,
            "rouge2": six.rouge2,
            "rougeL": six.rougeL,
            "meteor": six.meteor,
            "pairs": len(pairs),
        }
    )
    return 0


# ---------------------------------------------------------------- evaluate

def cmd_evaluate(args, cfg):
    records = _read_generic(args.dataset)
    g = _load_graph_arg(_pick(args.graph, cfg, "graph", None))
    classifier = _build_classifier(args, cfg, dataset=records)
    generator = _build_generator(args, cfg, dataset=records)
    threshold = _pick(args.threshold, cfg, "threshold", 0.5)
    cache = harness.EvalCache(args.cache) if args.cache else None
    dataset_name = args.dataset_name or "custom"
    run = harness.evaluate(
        records,
        generator,
        classifier,
        graph=g,
        restricted=args.restricted,
        reference=args.reference,
        model_name=args.model_name,
        dataset_name=dataset_name,
        threshold=threshold,
        cache=cache,
    )
    report = harness.compare([run])
    paths = harness.write_report(report, args.out)
    log.info("wrote %s", ", ".join(sorted(paths.values())))
    _emit(
        {
            "model": run.model_name,
            "dataset": run.dataset_name,
            "restricted": run.restricted,
            "pair_count": run.pair_count,
            "metrics": {m.name: m.value for m in run.metrics},
            "out": args.out,
        }
    )
    return 0


# ------------------------------------------------------------------- serve

def cmd_serve(args, cfg):
    import uvicorn

    g = _load_graph_arg(_pick(args.graph, cfg, "graph", None))
    classifier = _build_classifier(args, cfg)
    generator = _build_generator(args, cfg)
    threshold = _pick(args.threshold, cfg, "threshold", 0.5)
    app = create_app(
        classifier=classifier, generator=generator, graph=g, threshold=threshold
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# ------------------------------------------------------------------ parser

def _add_classifier_flags(p: argparse.ArgumentParser):
    p.add_argument("--classifier", choices=["remote", "lexicon", "fixed"], default=None)
    p.add_argument("--classifier-endpoint", default=None, metavar="URL")
    p.add_argument("--fixed-map", default=None, metavar="FILE",
                   help="JSON text-to-scores map for the fixed backend")
    p.add_argument("--threshold", type=float, default=None)


def _add_generator_flags(p: argparse.ArgumentParser):
    p.add_argument("--generator", choices=["remote", "echo", "oracle"], default=None)
    p.add_argument("--generator-endpoint", default=None, metavar="URL")
    p.add_argument("--oracle-table", default=None, metavar="FILE",
                   help="generic JSONL giving source-to-target pairs for the oracle backend")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emogradient",
        description="Emotion-gradient paraphrasing toolkit",
    )
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (default 42)")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="JSON file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    corpus_p = sub.add_parser("corpus", help="corpus pipeline steps")
    corpus_sub = corpus_p.add_subparsers(dest="subcommand", required=True)

    p = corpus_sub.add_parser("ingest", help="read a corpus file into canonical JSONL")
    p.add_argument("input")
    p.add_argument("--format", required=True, choices=list(corpus_mod.ORIGINS))
    p.add_argument("--split", choices=list(corpus_mod.SPLITS), default="unsplit")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus_ingest)

    p = corpus_sub.add_parser("label", help="classify both sides of every pair")
    p.add_argument("input")
    _add_classifier_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus_label)

    p = corpus_sub.add_parser("filter", help="apply the drop rules; prints FilterStats")
    p.add_argument("input")
    p.add_argument("--pwi-threshold", type=float, default=None)
    p.add_argument("--require-majority", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus_filter)

    p = corpus_sub.add_parser("split", help="deterministic train/test split")
    p.add_argument("input")
    p.add_argument("--policy", choices=["random", "presplit"], default="random")
    p.add_argument("--ratio", type=float, default=0.75)
    p.add_argument("--swap", action="store_true",
                   help="swap train and test (limited-data configuration)")
    p.add_argument("--train-out", required=True)
    p.add_argument("--test-out", required=True)
    p.set_defaults(func=cmd_corpus_split, needs_seed=True)

    p = corpus_sub.add_parser("restrict", help="keep only graph-valid transitions")
    p.add_argument("input")
    p.add_argument("--graph", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus_restrict)

    p = corpus_sub.add_parser("stats", help="summary counts for a corpus file")
    p.add_argument("input")
    p.set_defaults(func=cmd_corpus_stats)

    graph_p = sub.add_parser("graph", help="transition graph tools")
    graph_sub = graph_p.add_subparsers(dest="subcommand", required=True)

    p = graph_sub.add_parser("export", help="emit the active graph as JSON")
    p.add_argument("--graph", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_graph_export)

    p = graph_sub.add_parser("validate", help="check a graph config file")
    p.add_argument("graph_file")
    p.set_defaults(func=cmd_graph_validate)

    p = graph_sub.add_parser("suggest", help="list transitions from an emotion")
    p.add_argument("emotion")
    p.add_argument("--graph", default=None)
    p.set_defaults(func=cmd_graph_suggest)

    p = sub.add_parser("paraphrase", help="one-shot paraphrase")
    p.add_argument("--text", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--source", default=None,
                   help="source emotion; classified from the text when omitted")
    p.add_argument("--graph", default=None)
    _add_classifier_flags(p)
    _add_generator_flags(p)
    p.set_defaults(func=cmd_paraphrase)

    metrics_p = sub.add_parser("metrics", help="metric tools")
    metrics_sub = metrics_p.add_subparsers(dest="subcommand", required=True)
    p = metrics_sub.add_parser(
        "score",
        help="score hypothesis vs reference JSONL "
        "(--pred lines: {id, hypothesis, pred_emotion?}; "
        "--ref lines: {id, reference, target_emotion?})",
    )
    p.add_argument("--pred", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--emotions", action="store_true",
                   help="require emotion fields on every record")
    p.set_defaults(func=cmd_metrics_score)

    p = sub.add_parser("evaluate", help="run the evaluation protocol over a labeled dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model-name", required=True)
    p.add_argument("--dataset-name", default=None)
    p.add_argument("--restricted", action="store_true")
    p.add_argument("--reference", choices=list(harness.REFERENCE_MODES), default="target")
    p.add_argument("--graph", default=None)
    p.add_argument("--cache", default=None, metavar="FILE")
    p.add_argument("--out", required=True, metavar="DIR")
    _add_classifier_flags(p)
    _add_generator_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--graph", default=None)
    _add_classifier_flags(p)
    _add_generator_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage problems; remap usage to 1
        return 0 if exc.code == 0 else 1

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = _load_config(args.config)
        seed = _pick(args.seed, cfg, "seed", DEFAULT_SEED)
        print(f"seed: {seed}", file=sys.stderr)
        if getattr(args, "needs_seed", False):
            return args.func(args, cfg, seed) or 0
        return args.func(args, cfg) or 0
    except (GatewayError, harness.EvalAbortedError) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 3
    except (
        corpus_mod.CorpusError,
        GraphConfigError,
        prefix.PrefixError,
        harness.EmptyDatasetError,
        UnknownEmotionError,
        ValueError,
        OSError,
        json.JSONDecodeError,
        KeyError,
    ) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

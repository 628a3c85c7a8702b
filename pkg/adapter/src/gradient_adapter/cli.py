"""Adapter command line: serve the wire protocols or run the toy recipe."""

import argparse
import json
import sys
from typing import Optional

from emogradient.corpus import CorpusError

from .config import AdapterConfig
from .finetune import InvalidDatasetError, finetune
from .service import create_app


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradient-adapter",
        description="Model adapter for the emogradient gateways",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="serve /classify and /generate")
    p.add_argument("--mode", choices=["stub", "real"], default="stub")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=9090)
    p.add_argument("--classifier-model", default=None)
    p.add_argument("--generator-model", default=None)

    p = sub.add_parser("finetune", help="train the toy seq2seq on a canonical JSONL corpus")
    p.add_argument("--train", required=True, metavar="FILE")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--epochs", type=int, default=3)
    p.add_argument("--batch-size", type=int, default=6)
    p.add_argument("--max-length", type=int, default=128)
    p.add_argument("--seed", type=int, default=42)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        overrides = {}
        if args.classifier_model:
            overrides["classifier_model"] = args.classifier_model
        if args.generator_model:
            overrides["generator_model"] = args.generator_model
        app = create_app(AdapterConfig(mode=args.mode, **overrides))
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    config = AdapterConfig(
        epochs=args.epochs, batch_size=args.batch_size, max_length=args.max_length
    )
    try:
        summary = finetune(args.train, args.out, config, seed=args.seed)
    except (InvalidDatasetError, CorpusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(summary))
    return 0


if __name__ == "__main__":
    sys.exit(main())

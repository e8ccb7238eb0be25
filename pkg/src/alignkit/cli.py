"""Batch front door: align, score, realign, and serve without a browser.

Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .embeddings import (EmptyVocabulary, MalformedLine,
                         deterministic_test_provider, load_vector_file)
from .heuristic import Weights
from .model import render_table
from .search import DEFAULT_STEPS, SearchConfig
from .session import SessionError, load_document, new_session

EMBEDDINGS_ENV = "ALIGNKIT_EMBEDDINGS"


class InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alignkit",
        description="Align parallel texts into a table of comparable columns")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--embeddings", metavar="PATH",
                       help=f"plain-text vector file (default: ${EMBEDDINGS_ENV})")
        p.add_argument("--test-embeddings", metavar="SEED", type=int,
                       help="use the deterministic test provider instead of a file")
        p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        p.add_argument("input", nargs="?",
                       help="input file (default stdin)")

    def add_search_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--greedy-prob", type=float, default=0.5)
        p.add_argument("--stall-window", type=int, default=2)
        p.add_argument("--max-shift-distance", type=int, default=3)
        p.add_argument("--weights", metavar="COL,FCOL,EMBED,BIAS",
                       help="heuristic weights, default 0.2,0.2,1,5")

    p_align = sub.add_parser("align", help="align input lines and export")
    add_search_flags(p_align)
    p_align.add_argument("--format", choices=("tsv", "json", "html"),
                         default="tsv")
    add_common(p_align)

    p_score = sub.add_parser("score", help="score a save document")
    add_common(p_score)

    p_realign = sub.add_parser("realign",
                               help="refine a save document with search")
    add_search_flags(p_realign)
    add_common(p_realign)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--embeddings", metavar="PATH")
    p_serve.add_argument("--test-embeddings", metavar="SEED", type=int)
    return parser


def make_provider(args):
    if args.test_embeddings is not None and args.embeddings:
        raise InputError("choose either --embeddings or --test-embeddings")
    if args.test_embeddings is not None:
        return deterministic_test_provider(args.test_embeddings)
    path = args.embeddings or os.environ.get(EMBEDDINGS_ENV)
    if not path:
        raise InputError(
            f"no embedding source: pass --embeddings, --test-embeddings, "
            f"or set ${EMBEDDINGS_ENV}")
    try:
        return load_vector_file(path)
    except FileNotFoundError as exc:
        raise InputError(f"vector file not found: {path}") from exc
    except (MalformedLine, EmptyVocabulary) as exc:
        raise InputError(f"bad vector file: {exc}") from exc


def parse_weights(spec: str | None) -> Weights:
    if not spec:
        return Weights()
    parts = spec.split(",")
    if len(parts) != 4:
        raise InputError("--weights needs four comma-separated numbers")
    try:
        w_col, w_fcol, w_embed, w_bias = (float(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"bad --weights value: {exc}") from exc
    return Weights(w_col, w_fcol, w_embed, w_bias)


def search_config(args) -> SearchConfig:
    try:
        return SearchConfig(greedy_prob=args.greedy_prob,
                            stall_window=args.stall_window,
                            max_steps=args.steps,
                            max_shift_distance=args.max_shift_distance,
                            seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def read_input(args) -> str:
    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    return sys.stdin.read()


def write_output(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def read_document(args) -> dict:
    raw = read_input(args)
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not a JSON save document: {exc}") from exc


def cmd_align(args) -> None:
    provider = make_provider(args)
    cfg = search_config(args)
    weights = parse_weights(args.weights)
    lines = [ln for ln in read_input(args).splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty input")
    session = new_session(lines, provider, cfg, weights)
    if args.format == "json":
        write_output(args, session.save_json())
    else:
        write_output(args, render_table(session.alignment, args.format))


def cmd_score(args) -> None:
    provider = make_provider(args)
    session = load_document(read_document(args), provider)
    write_output(args, json.dumps(session.score().to_json(), sort_keys=True))


def cmd_realign(args) -> None:
    provider = make_provider(args)
    session = load_document(read_document(args), provider)
    session.search_cfg = search_config(args)
    if args.weights:
        session.weights = parse_weights(args.weights)
    session.realign(args.steps)
    write_output(args, session.save_json())


def cmd_serve(args) -> None:
    import uvicorn
    from pathlib import Path
    from .service import create_app
    provider = make_provider(args)
    static = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    app = create_app(provider, static_dir=static if static.is_dir() else None)
    uvicorn.run(app, host=args.host, port=args.port)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"align": cmd_align, "score": cmd_score,
                "realign": cmd_realign, "serve": cmd_serve}
    try:
        handlers[args.command](args)
    except (InputError, SessionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: encode, compare, analyze, verify-oracle.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable input,
malformed vocabulary, encode failure), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import LoadedTier, __version__, load_tier
from .corpus import CorpusSource, analyze, emit_report, pattern_hash
from .errors import InternalConsistencyError, OptsegError
from .greedy import encode_greedy
from .metrics import (context_fit_profile, document_tsr,
                      wordlen_frequency_profile)
from .optimal import encode_optimal
from .oracle import run_oracle_suite
from .pretokenize import pretokenize


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_tier_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tier", choices=("50k", "100k", "200k"), default="100k",
                   help="vocabulary tier (default 100k)")
    p.add_argument("--vocab", metavar="PATH",
                   help="explicit rank file (overrides tier lookup)")
    p.add_argument("--vocab-dir", metavar="DIR",
                   help="directory with tier rank files (fallback: $OPTSEG_VOCAB_DIR)")
    p.add_argument("--invalid-utf8", choices=("reject", "chunk-bytes"),
                   default="reject", help="how to treat undecodable input bytes")
    p.add_argument("--specials", action="store_true",
                   help="treat tier special-token literals as single tokens")


def _load(args) -> LoadedTier:
    if args.vocab:
        from .pretokenize import TIER_SPECIAL_TOKENS, tier_config
        from .vocab import build_reversed_trie, load_rank_path
        vocab = load_rank_path(args.vocab, TIER_SPECIAL_TOKENS[args.tier])
        cfg = tier_config(args.tier, enable_special_tokens=args.specials,
                          on_invalid_utf8=args.invalid_utf8)
        return LoadedTier(args.tier, vocab, build_reversed_trie(vocab), cfg)
    return load_tier(args.tier, args.vocab_dir,
                     enable_special_tokens=args.specials,
                     on_invalid_utf8=args.invalid_utf8)


def _read_docs(path: str) -> list[bytes]:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        data = Path(path).read_bytes()
    if not data:
        return []
    lines = data.split(b"\n")[:-1] if data.endswith(b"\n") else data.split(b"\n")
    return [line.rstrip(b"\r") for line in lines]


def _piece_str(piece: bytes) -> str:
    return piece.decode("utf-8", "replace")


def cmd_encode(args) -> int:
    loaded = _load(args)
    if args.file is not None:
        docs = _read_docs(args.file)
    elif args.text is not None:
        docs = [args.text.encode("utf-8")]
    else:
        print("encode: provide TEXT or --file", file=sys.stderr)
        return 1
    out = sys.stdout
    for doc_idx, doc in enumerate(docs):
        for pt in pretokenize(doc, loaded.config):
            if pt.special:
                ids = [loaded.vocab.special_tokens[pt.bytes.decode("utf-8")]]
                pieces = [pt.bytes]
            else:
                seg = (encode_greedy(loaded.vocab, pt.bytes) if args.mode == "greedy"
                       else encode_optimal(loaded.vocab, loaded.trie, pt.bytes))
                ids = list(seg.token_ids)
                pieces = seg.pieces(loaded.vocab)
            piece_strs = [_piece_str(p) for p in pieces]
            if args.format == "json":
                out.write(json.dumps({"doc": doc_idx, "ids": ids,
                                      "pieces": piece_strs, "count": len(ids)},
                                     ensure_ascii=False) + "\n")
            else:
                out.write(f"{doc_idx}\t{','.join(map(str, ids))}\t"
                          f"{json.dumps(piece_strs, ensure_ascii=False)}\t{len(ids)}\n")
    return 0


def cmd_compare(args) -> int:
    loaded = _load(args)
    docs = _read_docs(args.file)
    rows = []
    for i, doc in enumerate(docs):
        doc_id = str(i)
        if not doc:  # zero-byte documents have no tokens; TSR is undefined
            continue
        rec = document_tsr(loaded.vocab, loaded.trie, loaded.config, doc, doc_id)
        if args.only_nonzero and not rec.tsr > 0:
            continue
        rows.append(rec)
    out = sys.stdout
    if args.format == "json":
        for r in rows:
            out.write(json.dumps({"doc_id": r.doc_id, "tokens_greedy": r.tokens_greedy,
                                  "tokens_optimal": r.tokens_optimal,
                                  "tsr": float(r.tsr)}) + "\n")
    else:
        out.write("doc_id\ttokens_greedy\ttokens_optimal\ttsr\n")
        for r in rows:
            out.write(f"{r.doc_id}\t{r.tokens_greedy}\t{r.tokens_optimal}\t"
                      f"{float(r.tsr):.6f}\n")
    return 0


def _analyze_config(args) -> dict:
    cfg: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            cfg = json.load(f)
    if args.corpus:
        sources = []
        for spec_str in args.corpus:
            tag, _, path = spec_str.partition("=")
            if not path:
                tag, path = "und", tag
            sources.append({"path": path, "language_tag": tag})
        cfg["sources"] = sources
    for key, value in (("tier", args.tier_flag), ("seed", args.seed),
                       ("metrics", args.metrics), ("format", args.format),
                       ("output_dir", args.out), ("limit_docs", args.limit_docs),
                       ("threads", args.threads)):
        if value is not None:
            cfg[key] = value
    cfg.setdefault("tier", "100k")
    cfg.setdefault("seed", 0)
    cfg.setdefault("metrics", ["tsr", "wordlen", "frequency", "context-fit"])
    cfg.setdefault("format", "csv")
    cfg.setdefault("output_dir", "optseg-report")
    cfg.setdefault("wordlen_mode", "pretoken")
    cfg.setdefault("context_window", 2048)
    cfg.setdefault("context_k_max", 8)
    cfg.setdefault("context_samples", 200)
    cfg.setdefault("context_examples", 500)
    if isinstance(cfg["metrics"], str):
        cfg["metrics"] = [m for m in cfg["metrics"].split(",") if m]
    return cfg


def cmd_analyze(args) -> int:
    cfg = _analyze_config(args)
    if not cfg.get("sources"):
        print("analyze: no corpus sources given (use --corpus or a config file)",
              file=sys.stderr)
        return 1
    for src in cfg["sources"]:
        if not Path(src["path"]).exists():
            print(f"analyze: corpus path does not exist: {src['path']}", file=sys.stderr)
            return 2
    loaded = load_tier(cfg["tier"], args.vocab_dir,
                       on_invalid_utf8=args.invalid_utf8)
    metrics = list(cfg["metrics"])
    threads = cfg.get("threads") or os.cpu_count() or 1
    out_dir = Path(cfg["output_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    def make_source(src: dict) -> CorpusSource:
        return CorpusSource(uri=src["path"], format=src.get("format", "plain-lines"),
                            language_tag=src.get("language_tag", "und"),
                            max_docs=cfg.get("limit_docs"),
                            max_bytes=src.get("max_bytes"),
                            text_field=src.get("text_field", "text"),
                            fail_fast=src.get("fail_fast", False))

    artifacts: list[Path] = []
    reports = []
    if "tsr" in metrics or "wordlen" in metrics:
        for src in cfg["sources"]:
            reports.append(analyze(make_source(src), loaded, metrics,
                                   seed=cfg["seed"], threads=threads,
                                   wordlen_mode=cfg["wordlen_mode"]))
    if "tsr" in metrics:
        path = out_dir / f"tsr_by_language.{cfg['format']}"
        emit_report(reports, cfg["format"], path, include_timing=args.timings)
        artifacts.append(path)
    if "wordlen" in metrics:
        path = out_dir / "wordlen_tsr.csv"
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write("language_tag,length,mean_tsr,word_count\n")
            for r in reports:
                for b in r.wordlen_buckets:
                    f.write(f"{r.language_tag},{b.length},{b.mean_tsr!r},{b.word_count}\n")
        artifacts.append(path)
    if "frequency" in metrics:
        path = out_dir / "wordlen_frequency.csv"
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write("language_tag,length,frequency\n")
            for src in cfg["sources"]:
                from .corpus import ingest
                hist = wordlen_frequency_profile(ingest(make_source(src)))
                for length, freq in hist:
                    f.write(f"{src.get('language_tag', 'und')},{length},{freq}\n")
        artifacts.append(path)
    if "context-fit" in metrics:
        path = out_dir / "context_fit.csv"
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write("language_tag,mode,k,fit_percentage\n")
            for src in cfg["sources"]:
                from .corpus import ingest
                source = make_source(src)
                examples = []
                for doc in ingest(source):
                    if doc.strip():
                        examples.append(doc)
                    if len(examples) >= cfg["context_examples"]:
                        break
                if not examples:
                    continue
                for mode in ("greedy", "optimal"):
                    curve = context_fit_profile(
                        loaded.vocab, loaded.trie, loaded.config, examples,
                        cfg["context_window"], mode, k_max=cfg["context_k_max"],
                        samples=cfg["context_samples"], seed=cfg["seed"])
                    for k, pct in curve:
                        f.write(f"{source.language_tag},{mode},{k},{pct!r}\n")
        artifacts.append(path)
    meta = {"tool_version": __version__, "tier": cfg["tier"],
            "pattern_sha256": pattern_hash(loaded.config.pattern),
            "seed": cfg["seed"], "metrics": metrics,
            "wordlen_mode": cfg["wordlen_mode"],
            "document_boundary": "line (plain/json-lines) or whole file (raw-file)",
            "context_fit": {"window": cfg["context_window"],
                            "k_max": cfg["context_k_max"],
                            "samples": cfg["context_samples"],
                            "max_examples": cfg["context_examples"]},
            "artifacts": [p.name for p in artifacts]}
    with open(out_dir / "run_metadata.json", "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")
    for p in artifacts:
        print(p)
    return 0


def cmd_verify_oracle(args) -> int:
    if args.cases == 0:
        print("warning: 0 cases requested; vacuous pass")
        return 0
    ran, failing, detail = run_oracle_suite(args.cases, args.seed,
                                            alphabet_size=args.alphabet,
                                            max_vocab=args.max_vocab,
                                            max_chunk=args.max_chunk)
    if failing is None:
        print(f"ok: {ran} cases, dp matches brute force (seed {args.seed})")
        return 0
    print(f"FAIL at case {ran}: {detail}", file=sys.stderr)
    print(f"counterexample: {failing.describe()}", file=sys.stderr)
    return 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optseg",
                     description="Byte-level BPE segmentation: greedy baseline vs "
                                 "minimal-token encoding, with token-saving analytics.")
    parser.add_argument("--version", action="version", version=f"optseg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="segment text and print ids, pieces, counts")
    _add_tier_args(p)
    p.add_argument("text", nargs="?", help="text to encode ('' allowed)")
    p.add_argument("--file", help="encode each line of FILE ('-' for stdin)")
    p.add_argument("--mode", choices=("greedy", "optimal"), default="greedy")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("compare", help="per-document token counts and TSR")
    _add_tier_args(p)
    p.add_argument("file", help="one document per line ('-' for stdin); "
                               "blank lines are skipped (TSR undefined)")
    p.add_argument("--only-nonzero", action="store_true",
                   help="keep only documents with tsr > 0")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("analyze", help="corpus reports: TSR tables and profile data")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--corpus", action="append", metavar="TAG=PATH",
                   help="corpus file with language tag (repeatable)")
    p.add_argument("--tier", dest="tier_flag", choices=("50k", "100k", "200k"))
    p.add_argument("--vocab-dir")
    p.add_argument("--invalid-utf8", choices=("reject", "chunk-bytes"), default="reject")
    p.add_argument("--metrics", help="comma list: tsr,wordlen,frequency,context-fit")
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--limit-docs", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output directory")
    p.add_argument("--timings", action="store_true",
                   help="include wall times in reports (breaks byte determinism)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-oracle",
                       help="randomized check: dp vs exhaustive enumeration")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=10000)
    p.add_argument("--alphabet", type=int, default=4)
    p.add_argument("--max-vocab", type=int, default=30)
    p.add_argument("--max-chunk", type=int, default=12)
    p.set_defaults(func=cmd_verify_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"optseg: internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        return 0
    except (OptsegError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"optseg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

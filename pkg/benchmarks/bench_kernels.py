#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-Python kernels.

Runs both backends over the bundled corpora and prints MB/s per backend
and mode, cross-checking that outputs agree along the way.

    OPTSEG_VOCAB_DIR=vocabs python benchmarks/bench_kernels.py [--tier 50k]
"""

import argparse
import sys
import time
from pathlib import Path

import optseg
from optseg import _kernels_py
from optseg.pretokenize import pretokenize

REPO = Path(__file__).resolve().parent.parent


def bench(mod, name, loaded, pretokens, total_bytes):
    t0 = time.perf_counter()
    for pt in pretokens:
        mod.greedy_ids(loaded.vocab.entries, pt)
    greedy = total_bytes / (time.perf_counter() - t0) / 1e6
    t0 = time.perf_counter()
    for pt in pretokens:
        mod.optimal_ids(loaded.trie, pt)
    optimal = total_bytes / (time.perf_counter() - t0) / 1e6
    print(f"{name:8s}  greedy {greedy:7.2f} MB/s   optimal {optimal:7.2f} MB/s")
    return greedy, optimal


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--tier", default="50k", choices=("50k", "100k", "200k"))
    ap.add_argument("--repeat", type=int, default=8,
                    help="corpus repetitions (bigger = steadier numbers)")
    args = ap.parse_args()

    try:
        from optseg import _kernels
    except ImportError:
        _kernels = None
        print("note: compiled kernels not built; benchmarking fallback only")

    loaded = optseg.load_tier(args.tier, REPO / "vocabs")
    text = (REPO / "tests" / "data" / "binding_corpus.txt").read_bytes() * args.repeat
    pretokens = [pt.bytes for pt in pretokenize(text, loaded.config)]
    total = len(text)
    print(f"tier {args.tier}: {total / 1e6:.1f} MB, {len(pretokens)} pre-tokens")

    if _kernels is not None:
        sample = pretokens[:: max(1, len(pretokens) // 2000)]
        for pt in sample:
            assert _kernels.greedy_ids(loaded.vocab.entries, pt) == \
                _kernels_py.greedy_ids(loaded.vocab.entries, pt)
            assert _kernels.optimal_ids(loaded.trie, pt) == \
                _kernels_py.optimal_ids(loaded.trie, pt)
        print(f"backends agree on {len(sample)} sampled pre-tokens")
        c = bench(_kernels, "cython", loaded, pretokens, total)
    p = bench(_kernels_py, "python", loaded, pretokens, total)
    if _kernels is not None:
        print(f"speedup: greedy {c[0] / p[0]:.1f}x, optimal {c[1] / p[1]:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

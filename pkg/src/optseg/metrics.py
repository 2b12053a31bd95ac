"""Token-saving metrics.

The token saving ratio of an alternative segmentation against a baseline is
(base_count - alt_count) / base_count, kept as an exact Fraction so that
identities like tsr + alt/base == 1 hold without rounding.  Everything here
is pure computation; serialization lives in the corpus module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UndefinedMetricError
from .greedy import encode_greedy
from .optimal import encode_optimal
from .pretokenize import PretokenizerConfig, pretokenize
from .vocab import ReversedTrie, Vocabulary


def tsr(base_count: int, alt_count: int) -> Fraction:
    """Fraction of tokens saved by the alternative over the baseline."""
    if base_count == 0:
        raise UndefinedMetricError("TSR is undefined for a zero-token baseline")
    if base_count < 0 or alt_count < 0:
        raise ValueError("token counts must be non-negative")
    return Fraction(base_count - alt_count, base_count)


@dataclass(frozen=True)
class TsrRecord:
    doc_id: str
    tokens_greedy: int
    tokens_optimal: int
    tsr: Fraction


@dataclass(frozen=True)
class WordLenBucket:
    length: int  # unit length in Unicode scalar values, not bytes
    mean_tsr: float
    word_count: int


def segment_counts(vocab: Vocabulary, trie: ReversedTrie,
                   cfg: PretokenizerConfig, doc: bytes) -> tuple[int, int]:
    """(greedy, optimal) token totals over all pre-tokens of `doc`.

    Special-token chunks count as one token on both sides; they never enter
    either segmenter.
    """
    greedy_total = 0
    optimal_total = 0
    for pt in pretokenize(doc, cfg):
        if pt.special:
            greedy_total += 1
            optimal_total += 1
            continue
        greedy_total += len_greedy(vocab, pt.bytes)
        optimal_total += len(encode_optimal(vocab, trie, pt.bytes).token_ids)
    return greedy_total, optimal_total


def len_greedy(vocab: Vocabulary, data: bytes) -> int:
    return len(encode_greedy(vocab, data).token_ids)


def document_tsr(vocab: Vocabulary, trie: ReversedTrie, cfg: PretokenizerConfig,
                 doc: bytes, doc_id: str = "") -> TsrRecord:
    """Per-document record: token totals for both modes plus their TSR."""
    g, o = segment_counts(vocab, trie, cfg, doc)
    if g == 0:
        raise UndefinedMetricError(f"document {doc_id!r} produced zero tokens")
    return TsrRecord(doc_id, g, o, tsr(g, o))


def nonzero_tsr_split(records: Sequence[TsrRecord]) -> tuple[list[TsrRecord], Fraction]:
    """Records with tsr > 0 and their percentage of the input (0 if empty)."""
    subset = [r for r in records if r.tsr > 0]
    if not records:
        return subset, Fraction(0)
    return subset, Fraction(100 * len(subset), len(records))


def _unit_text(data: bytes) -> str:
    return data.decode("utf-8", "surrogateescape")


def wordlen_tsr_profile(vocab: Vocabulary, trie: ReversedTrie,
                        cfg: PretokenizerConfig, corpus: Iterable[bytes],
                        mode: str = "pretoken") -> list[WordLenBucket]:
    """Mean per-unit TSR grouped by unit character length.

    mode "pretoken" buckets each pre-token (length measured after stripping
    surrounding whitespace); mode "whitespace-word" buckets whitespace-
    delimited words, re-segmenting each word on its own.
    """
    if mode not in ("pretoken", "whitespace-word"):
        raise ValueError(f"unknown mode {mode!r}")
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}

    def add(length: int, value: Fraction) -> None:
        if length == 0:
            return
        sums[length] = sums.get(length, 0.0) + float(value)
        counts[length] = counts.get(length, 0) + 1

    for doc in corpus:
        if mode == "pretoken":
            for pt in pretokenize(doc, cfg):
                if pt.special:
                    continue
                g = len_greedy(vocab, pt.bytes)
                o = len(encode_optimal(vocab, trie, pt.bytes).token_ids)
                add(len(_unit_text(pt.bytes).strip()), tsr(g, o))
        else:
            for word in _unit_text(doc).split():
                data = word.encode("utf-8", "surrogateescape")
                g, o = segment_counts(vocab, trie, cfg, data)
                if g == 0:
                    continue
                add(len(word), tsr(g, o))
    return [WordLenBucket(n, sums[n] / counts[n], counts[n])
            for n in sorted(counts)]


def wordlen_frequency_profile(corpus: Iterable[bytes]) -> list[tuple[int, int]]:
    """Histogram of whitespace-word character lengths, sorted by length."""
    counts: dict[int, int] = {}
    for doc in corpus:
        for word in _unit_text(doc).split():
            n = len(word)
            counts[n] = counts.get(n, 0) + 1
    return sorted(counts.items())


def context_fit_profile(vocab: Vocabulary, trie: ReversedTrie,
                        cfg: PretokenizerConfig, examples: Sequence[bytes],
                        context_window: int, mode: str,
                        k_max: int = 16, samples: int = 1000,
                        seed: int = 0) -> list[tuple[int, float]]:
    """Percentage of random k-example draws whose token total fits the window.

    For each k in 1..k_max, `samples` index tuples are drawn with a
    dedicated seeded generator; the draws depend only on (seed, k, number of
    examples), so greedy and optimal runs see identical samples.
    """
    if context_window < 1:
        raise ValueError("context_window must be >= 1")
    if mode not in ("greedy", "optimal"):
        raise ValueError(f"unknown mode {mode!r}")
    counts = []
    for doc in examples:
        g, o = segment_counts(vocab, trie, cfg, doc)
        counts.append(g if mode == "greedy" else o)
    out = []
    n = len(examples)
    for k in range(1, k_max + 1):
        rng = random.Random(f"{seed}:{k}:{n}")
        fit = 0
        for _ in range(samples):
            total = sum(counts[rng.randrange(n)] for _ in range(k))
            if total <= context_window:
                fit += 1
        out.append((k, 100.0 * fit / samples))
    return out

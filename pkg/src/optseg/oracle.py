"""Exhaustive segmentation oracle and the randomized verification suite.

The oracle enumerates every boundary subset of a chunk (2^(n-1) of them),
keeps the valid segmentations, and picks the minimum-count one under the
same tie-break the DP uses: compare reversed length tuples, so the shortest
last token wins, then the shortest second-to-last, and so on.  It shares no
code with the DP path on purpose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .greedy import Segmentation
from .optimal import encode_optimal
from .vocab import Vocabulary, build_reversed_trie

DEFAULT_MAX_CHUNK = 16


def brute_force_min_segmentation(vocab: Vocabulary, chunk: bytes,
                                 max_chunk: int = DEFAULT_MAX_CHUNK) -> Segmentation | None:
    """Minimal segmentation by full enumeration, or None when impossible.

    Refuses chunks longer than `max_chunk` (enumeration is exponential).
    """
    n = len(chunk)
    if n == 0:
        raise ValueError("chunk must be non-empty")
    if n > max_chunk:
        raise ValueError(f"chunk length {n} exceeds oracle bound {max_chunk}")
    entries = vocab.entries
    best_key: tuple | None = None
    best_ids: list[int] | None = None
    # bit i of mask set = boundary after byte i
    for mask in range(1 << (n - 1)):
        ids = []
        lengths = []
        start = 0
        valid = True
        for i in range(n - 1):
            if mask >> i & 1:
                token_id = entries.get(chunk[start:i + 1])
                if token_id is None:
                    valid = False
                    break
                ids.append(token_id)
                lengths.append(i + 1 - start)
                start = i + 1
        if not valid:
            continue
        token_id = entries.get(chunk[start:n])
        if token_id is None:
            continue
        ids.append(token_id)
        lengths.append(n - start)
        key = (len(ids), tuple(reversed(lengths)))
        if best_key is None or key < best_key:
            best_key = key
            best_ids = ids
    if best_ids is None:
        return None
    return Segmentation(tuple(best_ids))


@dataclass
class OracleCase:
    tokens: list[bytes]
    chunk: bytes

    def describe(self) -> str:
        toks = ", ".join(repr(t) for t in self.tokens)
        return f"vocabulary=[{toks}] chunk={self.chunk!r}"


def random_case(rng: random.Random, alphabet_size: int = 4,
                max_vocab: int = 30, max_chunk: int = 12) -> OracleCase:
    """A toy vocabulary (all single symbols plus random multis) and a chunk."""
    k = rng.randint(1, alphabet_size)
    symbols = bytes(range(97, 97 + k))  # 'a', 'b', ...
    tokens = [bytes([s]) for s in symbols]
    n_multi = rng.randint(0, max_vocab - len(tokens))
    seen = set(tokens)
    for _ in range(n_multi):
        length = rng.randint(2, 6)
        t = bytes(rng.choice(symbols) for _ in range(length))
        if t not in seen:
            seen.add(t)
            tokens.append(t)
    chunk = bytes(rng.choice(symbols) for _ in range(rng.randint(1, max_chunk)))
    return OracleCase(tokens, chunk)


def case_vocabulary(case: OracleCase) -> Vocabulary:
    entries = {t: i for i, t in enumerate(case.tokens)}
    return Vocabulary(entries, tuple(case.tokens),
                      max(len(t) for t in case.tokens))


def run_oracle_suite(cases: int, seed: int, alphabet_size: int = 4,
                     max_vocab: int = 30, max_chunk: int = 12,
                     encode=encode_optimal) -> tuple[int, OracleCase | None, str]:
    """Compare the DP segmenter against the oracle on random cases.

    Returns (cases_run, first_failing_case_or_None, failure_detail).
    `encode` is swappable so the harness itself can be fault-tested.
    """
    rng = random.Random(seed)
    for i in range(cases):
        case = random_case(rng, alphabet_size, max_vocab, max_chunk)
        vocab = case_vocabulary(case)
        trie = build_reversed_trie(vocab)
        expected = brute_force_min_segmentation(vocab, case.chunk)
        try:
            got = encode(vocab, trie, case.chunk)
        except Exception as exc:  # noqa: BLE001 - anything counts as a mismatch
            if expected is None:
                continue  # unsegmentable chunk, error expected
            return i + 1, case, f"segmenter raised {exc!r}, oracle found {expected.token_ids}"
        if expected is None:
            return i + 1, case, f"oracle found no segmentation, segmenter returned {got.token_ids}"
        if got.count != expected.count:
            return (i + 1, case,
                    f"count mismatch: dp={got.count} oracle={expected.count}")
        if got.token_ids != expected.token_ids:
            return (i + 1, case,
                    f"id mismatch under shared tie-break: dp={got.token_ids} "
                    f"oracle={expected.token_ids}")
    return cases, None, ""

"""Minimal-token segmentation.

`encode_optimal` runs a dynamic program over the chunk: dp[i] is the least
number of tokens covering the prefix through byte i, with dp[-1] = 0 held in
an explicit base slot rather than relying on index wraparound.  Candidate
last tokens for each position are found by walking the chunk bytes backwards
through the reversed-token trie.  Updates happen only on strict improvement
while the suffix grows, so among all minimal segmentations the one whose
last token is shortest (recursively) is returned, deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import InternalConsistencyError
from .greedy import Segmentation
from .pretokenize import PreToken
from .vocab import ReversedTrie, Vocabulary

INFEASIBLE = 0x3FFFFFFF


@dataclass
class DpState:
    """DP tables for one chunk: minimal counts and parent backpointers.

    `dp[0]` is the empty-prefix base case (0 tokens); `dp[i + 1]` covers the
    prefix ending at byte i.  `par[i]` is the end index of the token before
    the one chosen at i, or -1 when that token starts the chunk.
    """

    dp: list[int]
    par: list[int]
    n: int

    def count_at(self, i: int) -> int:
        """Minimal tokens for the prefix ending at byte i (-1 for empty)."""
        return self.dp[i + 1]


def compute_dp_state(trie: ReversedTrie, chunk: PreToken | bytes) -> DpState:
    data = chunk.bytes if isinstance(chunk, PreToken) else chunk
    dp, par, _ = kernels.dp_arrays(trie, data)
    return DpState(dp, par, len(data))


def encode_optimal(vocab: Vocabulary, trie: ReversedTrie,
                   chunk: PreToken | bytes) -> Segmentation:
    """Segment one pre-token into the fewest possible vocabulary tokens.

    Raises UnsegmentableError (naming the first uncoverable byte offset)
    when the vocabulary cannot cover the chunk; impossible for
    byte-complete vocabularies.
    """
    data = chunk.bytes if isinstance(chunk, PreToken) else chunk
    if not data:
        raise ValueError("chunk must be non-empty")
    return Segmentation(tuple(kernels.optimal_ids(trie, data)))


def backtrack(state: DpState, chunk: PreToken | bytes,
              vocab: Vocabulary) -> Segmentation:
    """Recover the segmentation from a computed DpState.

    Walks the parent chain from the last byte, collects substrings, and maps
    each to its token id.  Raises InternalConsistencyError on a broken chain
    (out-of-range pointer, cycle, or a substring missing from the
    vocabulary).
    """
    data = chunk.bytes if isinstance(chunk, PreToken) else chunk
    n = state.n
    if n != len(data):
        raise InternalConsistencyError(f"state is for length {n}, chunk has {len(data)}")
    if n and state.dp[n] >= INFEASIBLE:
        raise InternalConsistencyError("dp has no feasible segmentation to backtrack")
    ids: list[int] = []
    k = n - 1
    steps = 0
    while k != -1:
        if steps > n:
            raise InternalConsistencyError("parent chain does not terminate (cycle)")
        prev = state.par[k]
        if not (-1 <= prev <= k - 1):
            raise InternalConsistencyError(f"par[{k}] = {prev} out of range [-1, {k - 1}]")
        token = data[prev + 1:k + 1]
        token_id = vocab.entries.get(token)
        if token_id is None:
            raise InternalConsistencyError(f"substring {token!r} not in vocabulary")
        ids.append(token_id)
        k = prev
        steps += 1
    ids.reverse()
    return Segmentation(tuple(ids))

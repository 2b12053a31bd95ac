"""Greedy (rank-merge) segmentation, the baseline behavior of the published
BPE tokenizers: start from single bytes, repeatedly merge the adjacent pair
whose concatenation has the lowest vocabulary rank."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .pretokenize import PreToken
from .vocab import Vocabulary


@dataclass(frozen=True)
class Segmentation:
    """An ordered token-id sequence whose bytes concatenate to the chunk."""

    token_ids: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.token_ids)

    def pieces(self, vocab: Vocabulary) -> list[bytes]:
        return [vocab.decode_one(i) for i in self.token_ids]


def encode_greedy(vocab: Vocabulary, chunk: PreToken | bytes) -> Segmentation:
    """Segment one pre-token by iterated lowest-rank pair merging.

    Rank ties are broken by leftmost position.  Requires a byte-complete
    vocabulary (otherwise the initial single-byte parts may not exist).
    """
    data = chunk.bytes if isinstance(chunk, PreToken) else chunk
    if not data:
        raise ValueError("chunk must be non-empty")
    if not vocab.byte_complete:
        raise ValueError("greedy segmentation requires a byte-complete vocabulary")
    return Segmentation(tuple(kernels.greedy_ids(vocab.entries, data)))

"""Byte-level BPE segmentation engine with greedy and minimal-token modes,
plus corpus analytics for comparing the two."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import (InternalConsistencyError, OptsegError, PretokenizeError,
                     RankFileError, UndefinedMetricError, UnknownTokenIdError,
                     UnsegmentableError)
from .greedy import Segmentation, encode_greedy
from .kernels import BACKEND
from .optimal import DpState, backtrack, compute_dp_state, encode_optimal
from .oracle import brute_force_min_segmentation
from .pretokenize import (PreToken, PretokenizerConfig, TIER_PATTERNS,
                          TIER_SPECIAL_TOKENS, pretokenize, tier_config)
from .vocab import (ReversedTrie, TIER_FILES, Vocabulary, build_reversed_trie,
                    decode, dump_rank_file, load_rank_file, load_rank_path,
                    resolve_rank_path)

__version__ = "0.1.0"


@dataclass(frozen=True)
class LoadedTier:
    """A vocabulary tier ready for segmentation: vocab, trie and config."""

    tier: str
    vocab: Vocabulary
    trie: ReversedTrie
    config: PretokenizerConfig


def load_tier(tier: str, vocab_dir: str | Path | None = None, *,
              enable_special_tokens: bool = False,
              on_invalid_utf8: str = "reject") -> LoadedTier:
    """Resolve, load a tier's rank file and build its trie and config."""
    path = resolve_rank_path(tier, vocab_dir)
    vocab = load_rank_path(path, TIER_SPECIAL_TOKENS[tier])
    trie = build_reversed_trie(vocab)
    cfg = tier_config(tier, enable_special_tokens=enable_special_tokens,
                      on_invalid_utf8=on_invalid_utf8)
    return LoadedTier(tier, vocab, trie, cfg)

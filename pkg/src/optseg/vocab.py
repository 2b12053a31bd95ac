"""BPE vocabulary loading and the reversed-token trie.

Rank files use the public format: one `<base64-token> <decimal-rank>` pair
per line (LF or CRLF).  Loaded vocabularies are immutable and safe to share
across threads; so is the trie built from them.
"""

from __future__ import annotations

import base64
import binascii
import functools
import gzip
import io
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable

import numpy as np

from .errors import RankFileError, UnknownTokenIdError

# tier name -> rank file shipped in a vocab directory
TIER_FILES = {
    "50k": "gpt2.tiktoken",
    "100k": "cl100k_base.tiktoken",
    "200k": "o200k_base.tiktoken",
}

VOCAB_DIR_ENV = "OPTSEG_VOCAB_DIR"

_GZIP_MAGIC = b"\x1f\x8b"


@dataclass(frozen=True)
class Vocabulary:
    """Bijective map between token byte-strings and dense integer ranks."""

    entries: dict[bytes, int]
    id_to_bytes: tuple[bytes, ...]
    max_token_len: int
    special_tokens: dict[str, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.id_to_bytes)

    @functools.cached_property
    def byte_complete(self) -> bool:
        """True when all 256 single-byte tokens are present."""
        return all(bytes([b]) in self.entries for b in range(256))

    def lookup(self, token: bytes) -> int:
        return self.entries[token]

    def decode_one(self, token_id: int) -> bytes:
        if 0 <= token_id < len(self.id_to_bytes):
            return self.id_to_bytes[token_id]
        for text, sid in self.special_tokens.items():
            if sid == token_id:
                return text.encode("utf-8")
        raise UnknownTokenIdError(f"unknown token id {token_id}")

    def with_special_tokens(self, special_tokens: dict[str, int]) -> "Vocabulary":
        return Vocabulary(self.entries, self.id_to_bytes, self.max_token_len,
                          dict(special_tokens))


def load_rank_file(source: BinaryIO | bytes,
                   special_tokens: dict[str, int] | None = None) -> Vocabulary:
    """Parse a rank file into a Vocabulary.

    Raises RankFileError (with the offending line number) on malformed
    base64, bad rank fields, duplicate tokens or ranks, empty input, or a
    non-dense rank range.
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    entries: dict[bytes, int] = {}
    by_rank: dict[int, bytes] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise RankFileError(f"expected '<base64> <rank>', got {raw!r}", lineno)
        try:
            token = base64.b64decode(parts[0], validate=True)
        except (binascii.Error, ValueError) as exc:
            raise RankFileError(f"malformed base64 {parts[0]!r}: {exc}", lineno) from exc
        if not token:
            raise RankFileError("empty token byte-string", lineno)
        try:
            rank = int(parts[1])
        except ValueError as exc:
            raise RankFileError(f"malformed rank {parts[1]!r}", lineno) from exc
        if rank < 0:
            raise RankFileError(f"negative rank {rank}", lineno)
        if token in entries:
            raise RankFileError(f"duplicate token {token!r}", lineno)
        if rank in by_rank:
            raise RankFileError(f"duplicate rank {rank}", lineno)
        entries[token] = rank
        by_rank[rank] = token
    if not entries:
        raise RankFileError("vocabulary may not be empty")
    m = len(entries)
    missing = next((r for r in range(m) if r not in by_rank), None)
    if missing is not None:
        raise RankFileError(f"ranks are not dense over [0, {m}): missing {missing}")
    id_to_bytes = tuple(by_rank[r] for r in range(m))
    max_len = max(len(t) for t in id_to_bytes)
    return Vocabulary(entries, id_to_bytes, max_len, dict(special_tokens or {}))


def dump_rank_file(vocab: Vocabulary, dest: BinaryIO) -> None:
    """Write `vocab` back out in rank order; inverse of load_rank_file."""
    for rank, token in enumerate(vocab.id_to_bytes):
        dest.write(base64.b64encode(token) + b" " + str(rank).encode("ascii") + b"\n")


def load_rank_path(path: str | Path,
                   special_tokens: dict[str, int] | None = None) -> Vocabulary:
    """Load a rank file from disk, transparently gunzipping by magic bytes."""
    path = Path(path)
    data = path.read_bytes()
    if data[:2] == _GZIP_MAGIC:
        data = gzip.decompress(data)
    return load_rank_file(data, special_tokens)


def resolve_rank_path(tier: str, vocab_dir: str | Path | None = None) -> Path:
    """Locate the rank file for a tier.

    Search order: `vocab_dir` argument, then $OPTSEG_VOCAB_DIR.  Both plain
    and .gz filenames are accepted.  Raises FileNotFoundError with download
    instructions when the file is absent (no implicit network fetch).
    """
    if tier not in TIER_FILES:
        raise ValueError(f"unknown tier {tier!r}; expected one of {sorted(TIER_FILES)}")
    name = TIER_FILES[tier]
    candidates = []
    for root in (vocab_dir, os.environ.get(VOCAB_DIR_ENV)):
        if not root:
            continue
        for fname in (name, name + ".gz"):
            p = Path(root) / fname
            candidates.append(p)
            if p.exists():
                return p
    tried = ", ".join(str(c) for c in candidates) or "(no vocab dir configured)"
    raise FileNotFoundError(
        f"rank file for tier {tier!r} not found (tried: {tried}). "
        f"Point --vocab-dir or ${VOCAB_DIR_ENV} at a directory containing "
        f"{name}[.gz]; see README for how to obtain the published vocabularies.")


def decode(vocab: Vocabulary, token_ids: Iterable[int]) -> bytes:
    """Concatenate the byte-strings of `token_ids` in order."""
    return b"".join(vocab.decode_one(i) for i in token_ids)


class ReversedTrie:
    """Trie over the byte-reversed vocabulary tokens.

    Walking the bytes of a chunk suffix from its end toward its start
    follows root-to-leaf paths here, so every trie node reached corresponds
    to a candidate token ending at the current position.

    Nodes are held in flat arrays (child lists sorted by byte value, plus a
    dense 256-way table at the root); `children`/`terminal` expose the same
    structure as per-node dicts for the pure-Python kernel.
    """

    __slots__ = ("children", "terminal", "root_child", "node_start",
                 "child_byte", "child_node", "terminal_arr", "node_count")

    def __init__(self, tokens: Iterable[tuple[bytes, int]]):
        children: list[dict[int, int]] = [{}]
        terminal: list[int] = [-1]
        for token, token_id in tokens:
            node = 0
            for b in reversed(token):
                nxt = children[node].get(b, -1)
                if nxt < 0:
                    nxt = len(children)
                    children[node][b] = nxt
                    children.append({})
                    terminal.append(-1)
                node = nxt
            terminal[node] = token_id
        self.children = children
        self.terminal = terminal
        self.node_count = len(children)
        self._freeze()

    def _freeze(self) -> None:
        n = self.node_count
        root = np.full(256, -1, dtype=np.int32)
        for b, node in self.children[0].items():
            root[b] = node
        starts = np.zeros(n + 1, dtype=np.int32)
        total = sum(len(c) for c in self.children)
        cbyte = np.empty(total, dtype=np.uint8)
        cnode = np.empty(total, dtype=np.int32)
        pos = 0
        for i, childmap in enumerate(self.children):
            starts[i] = pos
            for b in sorted(childmap):
                cbyte[pos] = b
                cnode[pos] = childmap[b]
                pos += 1
        starts[n] = pos
        self.root_child = root
        self.node_start = starts
        self.child_byte = cbyte
        self.child_node = cnode
        self.terminal_arr = np.asarray(self.terminal, dtype=np.int32)

    def walk(self, node: int, byte: int) -> int:
        """Child of `node` for `byte`, or -1."""
        return self.children[node].get(byte, -1)

    def terminal_id(self, node: int) -> int:
        """Token id if `node` is terminal, else -1."""
        return self.terminal[node]

    def contains_reversed(self, token: bytes) -> bool:
        """True iff walking reversed(token) from the root ends on a terminal."""
        node = 0
        for b in reversed(token):
            node = self.children[node].get(b, -1)
            if node < 0:
                return False
        return self.terminal[node] >= 0


def build_reversed_trie(vocab: Vocabulary) -> ReversedTrie:
    """Build the reversed-token trie for `vocab` (special tokens excluded)."""
    return ReversedTrie(vocab.entries.items())

"""Pre-tokenization: split documents into chunks with the published patterns.

The tier patterns use `\\p{...}` Unicode categories, which the stdlib `re`
engine does not understand.  `translate_pattern` rewrites them (and `\\s`)
into explicit code-point classes built from `unicodedata`, so the same
pattern strings shipped with the published vocabularies run unmodified.
The translated patterns are verified against reference-engine fixtures in
the test suite.

Both segmenters operate strictly within pre-token boundaries, so greedy
and optimal token counts stay comparable chunk for chunk.
"""

from __future__ import annotations

import functools
import json
import re
import sys
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import PretokenizeError

# Pattern strings as shipped with the published rank data (js-tiktoken,
# which expands tiktoken's `(?i:...)` contraction groups case-by-case).
TIER_PATTERNS = {
    "50k": r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+""",
    "100k": r"""('s|'S|'t|'T|'re|'rE|'Re|'RE|'ve|'vE|'Ve|'VE|'m|'M|'ll|'lL|'Ll|'LL|'d|'D)|[^\r\n\p{L}\p{N}]?\p{L}+|\p{N}{1,3}| ?[^\s\p{L}\p{N}]+[\r\n]*|\s*[\r\n]+|\s+(?!\S)|\s+""",
    "200k": r"""[^\r\n\p{L}\p{N}]?[\p{Lu}\p{Lt}\p{Lm}\p{Lo}\p{M}]*[\p{Ll}\p{Lm}\p{Lo}\p{M}]+('s|'S|'t|'T|'re|'rE|'Re|'RE|'ve|'vE|'Ve|'VE|'m|'M|'ll|'lL|'Ll|'LL|'d|'D)?|[^\r\n\p{L}\p{N}]?[\p{Lu}\p{Lt}\p{Lm}\p{Lo}\p{M}]+[\p{Ll}\p{Lm}\p{Lo}\p{M}]*('s|'S|'t|'T|'re|'rE|'Re|'RE|'ve|'vE|'Ve|'VE|'m|'M|'ll|'lL|'Ll|'LL|'d|'D)?|\p{N}{1,3}| ?[^\s\p{L}\p{N}]+[\r\n/]*|\s*[\r\n]+|\s+(?!\S)|\s+""",
}

TIER_SPECIAL_TOKENS = {
    "50k": {"<|endoftext|>": 50256},
    "100k": {"<|endoftext|>": 100257, "<|fim_prefix|>": 100258,
             "<|fim_middle|>": 100259, "<|fim_suffix|>": 100260,
             "<|endofprompt|>": 100276},
    "200k": {"<|endoftext|>": 199999, "<|endofprompt|>": 200018},
}

# \s per the reference engine (ECMAScript with /u): Unicode white space
# plus U+FEFF.  Pinned explicitly because Python's own \s also matches
# U+001C..001F and U+0085, which would silently diverge from the frozen
# reference fixtures.
_WHITESPACE = (
    "\\u0009-\\u000d\\u0020\\u00a0\\u1680\\u2000-\\u200a"
    "\\u2028\\u2029\\u202f\\u205f\\u3000\\ufeff"
)

_SURROGATE_LO = 0xD800
_SURROGATE_HI = 0xDFFF


@functools.lru_cache(maxsize=1)
def _categories() -> list[str]:
    cats = []
    for cp in range(sys.maxunicode + 1):
        if _SURROGATE_LO <= cp <= _SURROGATE_HI:
            cats.append("Cs")
        else:
            cats.append(unicodedata.category(chr(cp)))
    return cats


@functools.lru_cache(maxsize=None)
def _class_body(prefixes: tuple[str, ...]) -> str:
    """Character-class body (escaped ranges) for the given category prefixes."""
    cats = _categories()
    parts = []
    start = -1
    prev = -2
    for cp in range(sys.maxunicode + 1):
        cat = cats[cp]
        if cat != "Cs" and cat.startswith(prefixes):
            if cp != prev + 1:
                if start >= 0:
                    parts.append(_range(start, prev))
                start = cp
            prev = cp
    if start >= 0:
        parts.append(_range(start, prev))
    return "".join(parts)


def _range(lo: int, hi: int) -> str:
    if lo == hi:
        return _esc(lo)
    return _esc(lo) + "-" + _esc(hi)


def _esc(cp: int) -> str:
    return f"\\u{cp:04x}" if cp <= 0xFFFF else f"\\U{cp:08x}"


def translate_pattern(pattern: str) -> str:
    """Rewrite \\p{...}, \\s and \\S for the stdlib `re` engine.

    Possessive quantifiers (`?+`, `++`, `*+`) are degraded to their greedy
    forms; in the published patterns each possessive class is disjoint from
    whatever follows it, so backtracking into them can never change a match
    and the rewrite is behavior-preserving (checked by the frozen
    reference fixtures).
    """
    out: list[str] = []
    i = 0
    in_class = False
    n = len(pattern)
    while i < n:
        c = pattern[i]
        if c == "\\" and i + 1 < n:
            nxt = pattern[i + 1]
            if nxt in "pP":
                if i + 2 >= n or pattern[i + 2] != "{":
                    raise ValueError(f"malformed \\{nxt} at index {i}")
                end = pattern.index("}", i + 2)
                names = tuple(pattern[i + 3:end].split(","))
                body = _class_body(names)
                if in_class:
                    if nxt == "P":
                        raise ValueError("negated \\P inside a character class is unsupported")
                    out.append(body)
                else:
                    out.append(("[^" if nxt == "P" else "[") + body + "]")
                i = end + 1
                continue
            if nxt == "s":
                out.append(_WHITESPACE if in_class else "[" + _WHITESPACE + "]")
                i += 2
                continue
            if nxt == "S":
                if in_class:
                    raise ValueError("\\S inside a character class is unsupported")
                out.append("[^" + _WHITESPACE + "]")
                i += 2
                continue
            out.append(c + nxt)
            i += 2
            continue
        if not in_class and c == "+" and out and out[-1] in ("?", "*", "+", "}"):
            i += 1  # possessive quantifier -> greedy
            continue
        if c == "[" and not in_class:
            in_class = True
        elif c == "]" and in_class:
            in_class = False
        out.append(c)
        i += 1
    return "".join(out)


@functools.lru_cache(maxsize=64)
def compile_pattern(pattern: str) -> re.Pattern:
    return re.compile(translate_pattern(pattern))


@dataclass(frozen=True)
class PreToken:
    """One chunk of a document; concatenating all chunks restores it."""

    bytes: bytes
    offset: int  # byte index into the source document
    special: bool = False  # special-token literal, assigned its id directly


@dataclass(frozen=True)
class PretokenizerConfig:
    pattern: str
    special_tokens: frozenset[str] = frozenset()
    on_invalid_utf8: str = "reject"  # "reject" | "chunk-bytes"
    tier: str | None = None

    def __post_init__(self):
        if self.on_invalid_utf8 not in ("reject", "chunk-bytes"):
            raise ValueError(f"on_invalid_utf8 must be 'reject' or 'chunk-bytes', "
                             f"got {self.on_invalid_utf8!r}")


def tier_config(tier: str, *, enable_special_tokens: bool = False,
                on_invalid_utf8: str = "reject") -> PretokenizerConfig:
    if tier not in TIER_PATTERNS:
        raise ValueError(f"unknown tier {tier!r}; expected one of {sorted(TIER_PATTERNS)}")
    specials = frozenset(TIER_SPECIAL_TOKENS[tier]) if enable_special_tokens else frozenset()
    return PretokenizerConfig(TIER_PATTERNS[tier], specials, on_invalid_utf8, tier)


def config_from_file(path: str | Path) -> PretokenizerConfig:
    """Read a pretokenizer config: {"tier": ...} or {"pattern": ..., ...}."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if "tier" in data:
        return tier_config(data["tier"],
                           enable_special_tokens=data.get("enable_special_tokens", False),
                           on_invalid_utf8=data.get("on_invalid_utf8", "reject"))
    if "pattern" not in data:
        raise ValueError(f"{path}: config must name a 'tier' or a 'pattern'")
    return PretokenizerConfig(data["pattern"],
                              frozenset(data.get("special_tokens", ())),
                              data.get("on_invalid_utf8", "reject"))


# Lone surrogates produced by errors="surrogateescape" for undecodable bytes.
_ESCAPE_RUN = re.compile("[\udc80-\udcff]+")


def pretokenize(doc: bytes, cfg: PretokenizerConfig) -> list[PreToken]:
    """Split `doc` into pre-tokens covering it exactly, in order.

    Invalid UTF-8 raises PretokenizeError in "reject" mode; in
    "chunk-bytes" mode each maximal undecodable byte run becomes a single
    raw pre-token and the decodable remainder is matched normally.
    """
    if not doc:
        return []
    try:
        text = doc.decode("utf-8")
    except UnicodeDecodeError as exc:
        if cfg.on_invalid_utf8 == "reject":
            raise PretokenizeError(f"invalid UTF-8 at byte {exc.start}: {exc.reason}") from exc
        text = doc.decode("utf-8", "surrogateescape")
    out: list[PreToken] = []
    pos = 0

    def emit(piece: str, special: bool = False) -> None:
        nonlocal pos
        data = piece.encode("utf-8", "surrogateescape")
        out.append(PreToken(data, pos, special))
        pos += len(data)

    pat = compile_pattern(cfg.pattern)
    for segment, is_special in _split_specials(text, cfg.special_tokens):
        if is_special:
            emit(segment, special=True)
            continue
        for run, is_escape in _split_escape_runs(segment):
            if is_escape:
                emit(run)
            else:
                prev = 0
                for m in pat.finditer(run):
                    if m.start() > prev:  # remainder not covered by the pattern
                        emit(run[prev:m.start()])
                    if m.end() > m.start():
                        emit(m.group())
                    prev = m.end()
                if prev < len(run):
                    emit(run[prev:])
    return out


def _split_specials(text: str, specials: frozenset[str]):
    if not specials:
        yield text, False
        return
    alternation = "|".join(re.escape(s) for s in sorted(specials, key=len, reverse=True))
    pat = re.compile(alternation)
    prev = 0
    for m in pat.finditer(text):
        if m.start() > prev:
            yield text[prev:m.start()], False
        yield m.group(), True
        prev = m.end()
    if prev < len(text):
        yield text[prev:], False


def _split_escape_runs(text: str):
    prev = 0
    for m in _ESCAPE_RUN.finditer(text):
        if m.start() > prev:
            yield text[prev:m.start()], False
        yield m.group(), True
        prev = m.end()
    if prev < len(text):
        yield text[prev:], False

"""Corpus streaming, per-language aggregation and report emission.

Sources are consumed lazily so memory stays flat regardless of corpus size;
aggregation is an ordered reduction, which (with a fixed seed) makes report
bytes reproducible run to run and across worker counts.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Iterator

from . import __version__ as _version
from .errors import OptsegError
from .metrics import WordLenBucket, len_greedy, segment_counts, tsr
from .optimal import encode_optimal
from .pretokenize import pretokenize

logger = logging.getLogger("optseg.corpus")

FORMATS = ("plain-lines", "json-lines", "raw-file")

REPORT_SCHEMA_VERSION = 1


class CorpusFormatError(OptsegError):
    """A structured corpus line cannot be parsed (fail-fast mode)."""


@dataclass
class CorpusSource:
    uri: str | Path
    format: str = "plain-lines"
    language_tag: str = "und"
    max_docs: int | None = None
    max_bytes: int | None = None
    text_field: str = "text"
    fail_fast: bool = False

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown corpus format {self.format!r}; expected {FORMATS}")
        for limit in (self.max_docs, self.max_bytes):
            if limit is not None and limit < 0:
                raise ValueError("limits must be non-negative")


@dataclass
class IngestStats:
    docs: int = 0
    bytes: int = 0
    skipped_lines: int = 0


def ingest(source: CorpusSource, stats: IngestStats | None = None) -> Iterator[bytes]:
    """Lazy stream of document byte-strings, honoring the source limits.

    Malformed json-lines records are skipped with a counted warning unless
    `fail_fast` is set, in which case CorpusFormatError is raised.
    """
    if stats is None:
        stats = IngestStats()
    path = Path(source.uri)
    if source.format == "raw-file":
        data = path.read_bytes()
        if source.max_bytes is not None:
            data = data[:source.max_bytes]
        if source.max_docs == 0 or not data:
            return
        stats.docs += 1
        stats.bytes += len(data)
        yield data
        return
    with open(path, "rb") as f:
        for lineno, raw in enumerate(f, start=1):
            if source.max_docs is not None and stats.docs >= source.max_docs:
                return
            if source.max_bytes is not None and stats.bytes >= source.max_bytes:
                return
            line = raw.rstrip(b"\r\n")
            if source.format == "plain-lines":
                doc = line
            else:
                try:
                    record = json.loads(line)
                    doc = record[source.text_field].encode("utf-8")
                except (json.JSONDecodeError, KeyError, AttributeError, UnicodeDecodeError) as exc:
                    if source.fail_fast:
                        raise CorpusFormatError(
                            f"{path}:{lineno}: cannot extract {source.text_field!r}: {exc}") from exc
                    stats.skipped_lines += 1
                    logger.warning("%s:%d: skipping malformed line (%s)", path, lineno, exc)
                    continue
            stats.docs += 1
            stats.bytes += len(doc)
            yield doc


@dataclass
class LanguageReport:
    language_tag: str
    docs_processed: int
    total_greedy_tokens: int
    total_optimal_tokens: int
    micro_tsr: float | None
    macro_tsr: float | None
    nonzero_tsr_percentage: float | None
    wordlen_buckets: list[WordLenBucket] = field(default_factory=list)
    elapsed_wall_time: float = 0.0
    tier: str | None = None
    pattern_sha256: str = ""
    seed: int = 0
    skipped_lines: int = 0


def pattern_hash(pattern: str) -> str:
    return hashlib.sha256(pattern.encode("utf-8")).hexdigest()


def analyze(source: CorpusSource, loaded, metrics: Iterable[str] = ("tsr", "wordlen"),
            seed: int = 0, threads: int = 1,
            wordlen_mode: str = "pretoken") -> LanguageReport:
    """Run both segmenters over a source and aggregate the selected metrics.

    `loaded` bundles vocab, trie and pretokenizer config (see load_tier).
    Documents are processed by a bounded worker pool; aggregation happens
    in submission order, so results are independent of `threads`.
    """
    metrics = set(metrics)
    want_wordlen = "wordlen" in metrics
    vocab, trie, cfg = loaded.vocab, loaded.trie, loaded.config
    stats = IngestStats()
    t0 = time.perf_counter()

    def work(doc: bytes):
        g_total = 0
        o_total = 0
        buckets: list[tuple[int, float]] = []
        if wordlen_mode == "pretoken":
            for pt in pretokenize(doc, cfg):
                if pt.special:
                    g_total += 1
                    o_total += 1
                    continue
                g = len_greedy(vocab, pt.bytes)
                o = len(encode_optimal(vocab, trie, pt.bytes).token_ids)
                g_total += g
                o_total += o
                if want_wordlen:
                    n = len(pt.bytes.decode("utf-8", "surrogateescape").strip())
                    if n:
                        buckets.append((n, float(tsr(g, o))))
        else:
            g_total, o_total = segment_counts(vocab, trie, cfg, doc)
            if want_wordlen:
                for word in doc.decode("utf-8", "surrogateescape").split():
                    g, o = segment_counts(vocab, trie, cfg,
                                          word.encode("utf-8", "surrogateescape"))
                    if g:
                        buckets.append((len(word), float(tsr(g, o))))
        return g_total, o_total, buckets

    docs = ingest(source, stats)
    total_g = 0
    total_o = 0
    doc_count = 0
    tsr_sum = 0.0
    nonzero = 0
    bucket_sums: dict[int, float] = {}
    bucket_counts: dict[int, int] = {}

    def consume(result):
        nonlocal total_g, total_o, doc_count, tsr_sum, nonzero
        g, o, buckets = result
        total_g += g
        total_o += o
        if g > 0:
            doc_count += 1
            doc_tsr = float(tsr(g, o))
            tsr_sum += doc_tsr
            if doc_tsr > 0:
                nonzero += 1
        for n, value in buckets:
            bucket_sums[n] = bucket_sums.get(n, 0.0) + value
            bucket_counts[n] = bucket_counts.get(n, 0) + 1

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for result in pool.map(work, docs, chunksize=16):
                consume(result)
    else:
        for doc in docs:
            consume(work(doc))

    micro = float(Fraction(total_g - total_o, total_g)) if total_g else None
    macro = tsr_sum / doc_count if doc_count else None
    nonzero_pct = 100.0 * nonzero / doc_count if doc_count else None
    buckets = [WordLenBucket(n, bucket_sums[n] / bucket_counts[n], bucket_counts[n])
               for n in sorted(bucket_counts)] if want_wordlen else []
    return LanguageReport(
        language_tag=source.language_tag,
        docs_processed=stats.docs,
        total_greedy_tokens=total_g,
        total_optimal_tokens=total_o,
        micro_tsr=micro,
        macro_tsr=macro,
        nonzero_tsr_percentage=nonzero_pct,
        wordlen_buckets=buckets,
        elapsed_wall_time=time.perf_counter() - t0,
        tier=getattr(loaded, "tier", None),
        pattern_sha256=pattern_hash(cfg.pattern),
        seed=seed,
        skipped_lines=stats.skipped_lines,
    )


_CSV_COLUMNS = ["language_tag", "docs_processed", "total_greedy_tokens",
                "total_optimal_tokens", "micro_tsr", "macro_tsr",
                "nonzero_tsr_percentage", "skipped_lines", "tier",
                "pattern_sha256", "seed", "tool_version"]


def _sorted_reports(reports: Iterable[LanguageReport]) -> list[LanguageReport]:
    return sorted(reports, key=lambda r: (r.micro_tsr is None,
                                          -(r.micro_tsr or 0.0), r.language_tag))


def emit_report(reports: Iterable[LanguageReport], format: str,
                dest: str | Path | IO[str], include_timing: bool = False) -> None:
    """Write reports sorted by micro TSR descending, as CSV or JSON.

    Wall times vary run to run, so they are only included when
    `include_timing` is set; everything else is byte-stable for fixed
    inputs and seed.
    """
    if format not in ("json", "csv"):
        raise ValueError(f"unknown report format {format!r}")
    ordered = _sorted_reports(reports)
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as f:
            _write(ordered, format, f, include_timing)
    else:
        _write(ordered, format, dest, include_timing)


def _write(reports: list[LanguageReport], format: str, out: IO[str],
           include_timing: bool) -> None:
    if format == "csv":
        columns = _CSV_COLUMNS + (["elapsed_wall_time"] if include_timing else [])
        writer = csv.writer(out, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writerow(columns)
        for r in reports:
            row = [r.language_tag, r.docs_processed, r.total_greedy_tokens,
                   r.total_optimal_tokens, _num(r.micro_tsr), _num(r.macro_tsr),
                   _num(r.nonzero_tsr_percentage), r.skipped_lines,
                   r.tier or "", r.pattern_sha256, r.seed, _version]
            if include_timing:
                row.append(repr(r.elapsed_wall_time))
            writer.writerow(row)
        return
    payload = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool_version": _version,
        "reports": [_as_dict(r, include_timing) for r in reports],
    }
    json.dump(payload, out, ensure_ascii=False, indent=2)
    out.write("\n")


def _num(value: float | None) -> str:
    return "" if value is None else repr(value)


def _as_dict(r: LanguageReport, include_timing: bool) -> dict:
    d = {
        "language_tag": r.language_tag,
        "docs_processed": r.docs_processed,
        "total_greedy_tokens": r.total_greedy_tokens,
        "total_optimal_tokens": r.total_optimal_tokens,
        "micro_tsr": r.micro_tsr,
        "macro_tsr": r.macro_tsr,
        "nonzero_tsr_percentage": r.nonzero_tsr_percentage,
        "skipped_lines": r.skipped_lines,
        "tier": r.tier,
        "pattern_sha256": r.pattern_sha256,
        "seed": r.seed,
        "wordlen_buckets": [{"length": b.length, "mean_tsr": b.mean_tsr,
                             "word_count": b.word_count} for b in r.wordlen_buckets],
    }
    if include_timing:
        d["elapsed_wall_time"] = r.elapsed_wall_time
    return d


def read_report_json(path: str | Path) -> list[LanguageReport]:
    """Load reports back from a JSON report file (round-trip helper)."""
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    out = []
    for d in payload["reports"]:
        out.append(LanguageReport(
            language_tag=d["language_tag"],
            docs_processed=d["docs_processed"],
            total_greedy_tokens=d["total_greedy_tokens"],
            total_optimal_tokens=d["total_optimal_tokens"],
            micro_tsr=d["micro_tsr"],
            macro_tsr=d["macro_tsr"],
            nonzero_tsr_percentage=d["nonzero_tsr_percentage"],
            wordlen_buckets=[WordLenBucket(b["length"], b["mean_tsr"], b["word_count"])
                             for b in d["wordlen_buckets"]],
            elapsed_wall_time=d.get("elapsed_wall_time", 0.0),
            tier=d["tier"],
            pattern_sha256=d["pattern_sha256"],
            seed=d["seed"],
            skipped_lines=d["skipped_lines"],
        ))
    return out

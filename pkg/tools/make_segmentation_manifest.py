#!/usr/bin/env python3
"""Freeze the qualitative segmentation fixtures into a manifest.

Each fixture row states the expected greedy and minimal-token pieces for one
word and a rounded token-saving percentage.  This tool checks every row
against each loaded vocabulary tier and records where (if anywhere) the row
reproduces exactly; rows that no public tier reproduces are marked
unreproducible with the measured pieces, rather than forced.

Usage: OPTSEG_VOCAB_DIR=vocabs python tools/make_segmentation_manifest.py tests/data
"""

import json
import sys
from pathlib import Path

import optseg

# (language, greedy pieces, minimal pieces, expected rounded TSR %)
ROWS = [
    ("English", "p olic ym akers", "policy makers", 50),
    ("English", "sk ys canner", "sky scanner", 33),
    ("Indonesian", "mung kink ah", "mungkin kah", 33),
    ("Turkish", "y ü ks el me", "yük sel me", 40),
    ("Turkish", "k ata c ak ları nd an", "kat acak ların dan", 43),
    ("Finnish", "f otos y nt ees ille", "foto syn tees ille", 33),
    ("Finnish", "dat apro j ek tor", "data proj ekt ori", 33),
    ("Telugu", "Sang arsh ana", "Sangars hana", 33),
    ("Telugu", "Mall igad u", "Malliga du", 33),
    ("Tamil", "puri yav illai", "puriya villai", 33),
    ("Tamil", "yend rav udan", "yendra vudan", 33),
    ("Hindi", "v ich ar sh il", "vi chars hil", 40),
    ("Hindi", "pr ach in ak al", "pra china kal", 40),
]


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data")
    tiers = {t: optseg.load_tier(t) for t in ("50k", "100k", "200k")}
    manifest = []
    for language, greedy_s, optimal_s, expected_pct in ROWS:
        greedy_pieces = greedy_s.split(" ")
        optimal_pieces = optimal_s.split(" ")
        word = "".join(greedy_pieces)
        entry = {
            "language": language,
            "word": word,
            "greedy_pieces": greedy_pieces,
            "optimal_pieces": optimal_pieces,
            "expected_tsr_percent": expected_pct,
            "status": "unreproducible",
            "tier": None,
            "measured": {},
        }
        if "".join(optimal_pieces) != word:
            entry["status"] = "inconsistent-columns"
            manifest.append(entry)
            print(f"{language} {word!r}: columns decode to different strings")
            continue
        for tier, loaded in tiers.items():
            g = [p.decode() for p in
                 optseg.encode_greedy(loaded.vocab, word.encode()).pieces(loaded.vocab)]
            o = [p.decode() for p in
                 optseg.encode_optimal(loaded.vocab, loaded.trie, word.encode())
                 .pieces(loaded.vocab)]
            entry["measured"][tier] = {"greedy": g, "optimal": o}
            if g == greedy_pieces and o == optimal_pieces:
                entry["status"] = "reproducible"
                entry["tier"] = tier
                measured_pct = round(100 * (len(g) - len(o)) / len(g))
                entry["measured_tsr_percent"] = measured_pct
                break
        print(f"{language:11s} {word:18s} -> {entry['status']}"
              + (f" at {entry['tier']}" if entry["tier"] else ""))
        manifest.append(entry)
    path = out_dir / "segmentation_manifest.json"
    path.write_text(json.dumps(manifest, ensure_ascii=False, indent=1) + "\n",
                    encoding="utf-8")
    n_repro = sum(1 for e in manifest if e["status"] == "reproducible")
    print(f"{n_repro}/{len(manifest)} rows reproducible -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

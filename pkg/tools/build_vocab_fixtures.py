#!/usr/bin/env python3
"""Convert js-tiktoken rank data into plain `<base64> <rank>` rank files.

js-tiktoken (npm) ships the published OpenAI BPE vocabularies as JS modules
whose `bpe_ranks` field packs lines of `! <offset> <b64> <b64> ...`.  This
tool unpacks them into the standard one-pair-per-line rank-file format and
gzips the result into vocabs/.

Usage:
    python tools/build_vocab_fixtures.py <path-to-js-tiktoken>/dist/ranks vocabs/
"""

import base64
import gzip
import json
import sys
from pathlib import Path

# tier name -> (source module, output file)
TIERS = {
    "50k": ("gpt2", "gpt2.tiktoken.gz"),
    "100k": ("cl100k_base", "cl100k_base.tiktoken.gz"),
    "200k": ("o200k_base", "o200k_base.tiktoken.gz"),
}


def parse_ranks_js(path: Path) -> dict:
    raw = path.read_text()
    raw = raw[raw.index("{"):].rstrip().rstrip(";")
    return json.loads(raw)


def unpack_bpe_ranks(packed: str) -> dict[int, bytes]:
    ranks = {}
    for line in packed.split("\n"):
        if not line:
            continue
        fields = line.split(" ")
        offset = int(fields[1])
        for i, tok in enumerate(fields[2:]):
            ranks[offset + i] = base64.b64decode(tok)
    return ranks


def main() -> int:
    src = Path(sys.argv[1])
    dest = Path(sys.argv[2])
    dest.mkdir(parents=True, exist_ok=True)
    for tier, (module, outname) in TIERS.items():
        data = parse_ranks_js(src / f"{module}.js")
        ranks = unpack_bpe_ranks(data["bpe_ranks"])
        order = sorted(ranks)
        if order != list(range(len(order))):
            raise SystemExit(f"{module}: ranks are not dense")
        lines = []
        for r in order:
            lines.append(base64.b64encode(ranks[r]).decode("ascii") + f" {r}\n")
        out = dest / outname
        payload = "".join(lines).encode("ascii")
        with open(out, "wb") as raw:
            # mtime pinned so rebuilt fixtures are byte-identical
            with gzip.GzipFile(fileobj=raw, mode="wb", compresslevel=9, mtime=0) as f:
                f.write(payload)
        print(f"{tier}: {module} -> {out}  ({len(order)} tokens, "
              f"pat_str {len(data['pat_str'])} chars, "
              f"specials {data['special_tokens']})")
    return 0


if __name__ == "__main__":
    sys.exit(main())

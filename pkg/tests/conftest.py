import base64
import json
from pathlib import Path

import pytest

import optseg

REPO = Path(__file__).resolve().parent.parent
VOCAB_DIR = REPO / "vocabs"
DATA = Path(__file__).resolve().parent / "data"


def make_rank_file(tokens: list[bytes]) -> bytes:
    """Rank-file bytes assigning ranks by position."""
    lines = [base64.b64encode(t) + b" " + str(i).encode() for i, t in enumerate(tokens)]
    return b"\n".join(lines) + b"\n"


def toy_vocab(*extra: bytes) -> optseg.Vocabulary:
    """Byte-complete vocabulary: all 256 single bytes, then `extra` in order."""
    tokens = [bytes([b]) for b in range(256)] + list(extra)
    return optseg.load_rank_file(make_rank_file(tokens))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def tier50():
    return optseg.load_tier("50k", VOCAB_DIR)


@pytest.fixture(scope="session")
def tier100():
    return optseg.load_tier("100k", VOCAB_DIR)


@pytest.fixture(scope="session")
def tier200():
    return optseg.load_tier("200k", VOCAB_DIR)


@pytest.fixture(scope="session")
def tiers(tier50, tier100, tier200):
    return {"50k": tier50, "100k": tier100, "200k": tier200}


@pytest.fixture(scope="session")
def parity_lines() -> list[str]:
    text = (DATA / "parity_corpus.txt").read_text(encoding="utf-8")
    return text.split("\n")[:-1]


@pytest.fixture(scope="session")
def reference_ids() -> dict:
    return json.loads((DATA / "reference_ids.json").read_text())


@pytest.fixture(scope="session")
def reference_pretokens() -> dict:
    return json.loads((DATA / "reference_pretokens.json").read_text(encoding="utf-8"))


@pytest.fixture(autouse=True)
def _vocab_env(monkeypatch):
    monkeypatch.setenv("OPTSEG_VOCAB_DIR", str(VOCAB_DIR))

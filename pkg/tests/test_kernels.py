import random

import pytest

from optseg import _kernels_py, kernels
from optseg.errors import UnsegmentableError
from optseg.pretokenize import pretokenize
from optseg.vocab import build_reversed_trie

from conftest import toy_vocab

compiled = pytest.importorskip("optseg._kernels",
                               reason="compiled kernels not built")


class TestBackendParity:
    def test_backend_reports_itself(self):
        assert kernels.BACKEND in ("cython", "python")
        assert compiled.BACKEND == "cython"
        assert _kernels_py.BACKEND == "python"

    def test_greedy_parity_random(self):
        v = toy_vocab(b"ab", b"abc", b"bc", b"cc", b"ccc", b"ab-c")
        rng = random.Random(8)
        alphabet = b"abc-"
        for _ in range(800):
            data = bytes(rng.choice(alphabet) for _ in range(rng.randrange(1, 30)))
            assert compiled.greedy_ids(v.entries, data) == \
                _kernels_py.greedy_ids(v.entries, data)

    def test_optimal_parity_random(self):
        v = toy_vocab(b"ab", b"abc", b"bc", b"cc", b"ccc")
        t = build_reversed_trie(v)
        rng = random.Random(9)
        alphabet = b"abc"
        for _ in range(800):
            data = bytes(rng.choice(alphabet) for _ in range(rng.randrange(1, 30)))
            assert compiled.optimal_ids(t, data) == _kernels_py.optimal_ids(t, data)

    def test_parity_on_real_tier(self, tier100, parity_lines):
        v, t, cfg = tier100.vocab, tier100.trie, tier100.config
        for line in parity_lines[:80]:
            for pt in pretokenize(line.encode(), cfg):
                assert compiled.greedy_ids(v.entries, pt.bytes) == \
                    _kernels_py.greedy_ids(v.entries, pt.bytes)
                assert compiled.optimal_ids(t, pt.bytes) == \
                    _kernels_py.optimal_ids(t, pt.bytes)

    def test_unsegmentable_offsets_agree(self):
        import optseg
        from conftest import make_rank_file
        v = optseg.load_rank_file(make_rank_file([b"a", b"ab"]))
        t = build_reversed_trie(v)
        for data in (b"abx", b"xa", b"aabxa"):
            with pytest.raises(UnsegmentableError) as c_exc:
                compiled.optimal_ids(t, data)
            with pytest.raises(UnsegmentableError) as p_exc:
                _kernels_py.optimal_ids(t, data)
            assert c_exc.value.offset == p_exc.value.offset

import random

import pytest

from optseg import decode, encode_greedy
from optseg.pretokenize import pretokenize

from conftest import toy_vocab


class TestEncodeGreedy:
    def test_policymakers_pieces_100k(self, tier100):
        seg = encode_greedy(tier100.vocab, b"policymakers")
        assert seg.pieces(tier100.vocab) == [b"p", b"olic", b"ym", b"akers"]

    def test_single_byte(self):
        v = toy_vocab()
        seg = encode_greedy(v, b"a")
        assert seg.token_ids == (ord("a"),)

    def test_lowest_rank_merges_first(self):
        # "bc" outranks "ab", so "ab" merges first and wins the overlap
        v = toy_vocab(b"ab", b"bc")
        seg = encode_greedy(v, b"abc")
        assert seg.pieces(v) == [b"ab", b"c"]

    def test_merge_chain_through_ranked_concatenation(self):
        # after a+b -> "ab", the pair ("ab","c") concatenates to "abc",
        # which holds rank 257, so the merge loop takes it
        v = toy_vocab(b"ab", b"abc")
        seg = encode_greedy(v, b"abc")
        assert seg.pieces(v) == [b"abc"]

    def test_leftmost_tie_break(self):
        # "aa" can merge at position 0 or 1 with equal rank; leftmost wins,
        # leaving a lone final "a"
        v = toy_vocab(b"aa")
        seg = encode_greedy(v, b"aaa")
        assert seg.pieces(v) == [b"aa", b"a"]

    def test_empty_chunk_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            encode_greedy(toy_vocab(), b"")

    def test_byte_incomplete_vocab_rejected(self):
        import optseg
        from conftest import make_rank_file
        v = optseg.load_rank_file(make_rank_file([b"a", b"b"]))
        with pytest.raises(ValueError, match="byte-complete"):
            encode_greedy(v, b"ab")

    def test_round_trip_random_bytes(self):
        v = toy_vocab(b"ab", b"ba", b"aab", b"\xff\x00")
        rng = random.Random(4)
        for _ in range(500):
            data = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 24)))
            seg = encode_greedy(v, data)
            assert decode(v, seg.token_ids) == data

    def test_determinism(self, tier50):
        seg1 = encode_greedy(tier50.vocab, "değerlendirme".encode())
        seg2 = encode_greedy(tier50.vocab, "değerlendirme".encode())
        assert seg1.token_ids == seg2.token_ids


class TestGoldenParity:
    @pytest.mark.parametrize("tier_name", ["50k", "100k", "200k"])
    def test_corpus_matches_reference_dump(self, tier_name, tiers,
                                           parity_lines, reference_ids):
        loaded = tiers[tier_name]
        expected = reference_ids[tier_name]
        assert len(expected) == len(parity_lines) == 500
        for i, line in enumerate(parity_lines):
            ids = []
            for pt in pretokenize(line.encode(), loaded.config):
                ids.extend(encode_greedy(loaded.vocab, pt.bytes).token_ids)
            assert ids == expected[i], f"{tier_name} line {i}: {line!r}"

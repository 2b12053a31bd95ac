import random

import pytest

import optseg
from optseg import (backtrack, compute_dp_state, decode, encode_greedy,
                    encode_optimal)
from optseg.errors import InternalConsistencyError, UnsegmentableError
from optseg.optimal import DpState
from optseg.pretokenize import pretokenize
from optseg.vocab import build_reversed_trie

from conftest import make_rank_file, toy_vocab


def small_vocab(*tokens: bytes):
    v = optseg.load_rank_file(make_rank_file(list(tokens)))
    return v, build_reversed_trie(v)


class TestEncodeOptimal:
    def test_whole_chunk_single_token(self):
        v, t = small_vocab(b"a", b"b", b"ab")
        seg = encode_optimal(v, t, b"ab")
        assert seg.pieces(v) == [b"ab"]
        assert seg.count == 1

    def test_smallest_suffix_tie_break(self):
        # both 2-token segmentations exist; the suffix "c" is shorter than "bc"
        v, t = small_vocab(b"a", b"b", b"c", b"ab", b"bc")
        seg = encode_optimal(v, t, b"abc")
        assert seg.pieces(v) == [b"ab", b"c"]

    def test_beats_greedy_on_overlap_trap(self):
        # greedy merges "ab" first and strands the rest; optimal takes a|bcd
        v = toy_vocab(b"ab", b"bcd")
        t = build_reversed_trie(v)
        greedy = encode_greedy(v, b"abcd")
        optimal = encode_optimal(v, t, b"abcd")
        assert greedy.count == 3
        assert optimal.pieces(v) == [b"a", b"bcd"]

    def test_empty_chunk_rejected(self, tier50):
        with pytest.raises(ValueError, match="non-empty"):
            encode_optimal(tier50.vocab, tier50.trie, b"")

    def test_unsegmentable_names_first_uncoverable_offset(self):
        v, t = small_vocab(b"a", b"ab")
        with pytest.raises(UnsegmentableError) as exc:
            encode_optimal(v, t, b"abx")
        assert exc.value.offset == 2

    def test_unsegmentable_offset_zero(self):
        v, t = small_vocab(b"b")
        with pytest.raises(UnsegmentableError) as exc:
            encode_optimal(v, t, b"ab")
        assert exc.value.offset == 0

    def test_token_spanning_infeasible_prefix(self):
        # prefix "a" alone is uncoverable, yet "ab" covers the whole chunk
        v, t = small_vocab(b"ab")
        seg = encode_optimal(v, t, b"ab")
        assert seg.pieces(v) == [b"ab"]

    def test_round_trip_multibyte_scripts(self, tier100):
        texts = ["ğüşiöç", "中文字符串", "👩‍🔬🇹🇷", "हिन्दी", "ทดสอบ", "עִברִית"]
        for text in texts:
            data = text.encode()
            seg = encode_optimal(tier100.vocab, tier100.trie, data)
            assert decode(tier100.vocab, seg.token_ids) == data

    def test_round_trip_random_bytes(self):
        v = toy_vocab(b"ab", b"cde", b"\x00\x01")
        t = build_reversed_trie(v)
        rng = random.Random(11)
        for _ in range(500):
            data = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 24)))
            seg = encode_optimal(v, t, data)
            assert decode(v, seg.token_ids) == data

    def test_dominance_random_utf8(self, tier100):
        rng = random.Random(23)
        pools = [
            (0x41, 0x7A), (0x400, 0x4FF), (0x4E00, 0x4FFF), (0x900, 0x97F),
            (0x1F300, 0x1F64F), (0xC0, 0x17F), (0x600, 0x6FF),
        ]
        for _ in range(200):
            lo, hi = rng.choice(pools)
            text = "".join(chr(rng.randrange(lo, hi + 1)) for _ in range(rng.randrange(1, 30)))
            for pt in pretokenize(text.encode(), tier100.config):
                g = encode_greedy(tier100.vocab, pt.bytes).count
                o = encode_optimal(tier100.vocab, tier100.trie, pt.bytes).count
                assert o <= g, (text, pt)

    def test_per_position_upper_bound(self, tier50):
        # dp[i] <= i + 1 for byte-complete vocabularies
        data = "karşılaştırma!".encode()
        state = compute_dp_state(tier50.trie, data)
        for i in range(state.n):
            assert 1 <= state.count_at(i) <= i + 1

    def test_single_step_bound(self, tier50):
        # extending a prefix by one byte costs at most one extra token
        data = "değerlendirme çalışması 123".encode()
        state = compute_dp_state(tier50.trie, data)
        for i in range(1, state.n):
            assert state.count_at(i) <= state.count_at(i - 1) + 1

    def test_par_entries_name_vocabulary_tokens(self, tier50):
        data = b"understanding"
        state = compute_dp_state(tier50.trie, data)
        for i in range(state.n):
            prev = state.par[i]
            assert -1 <= prev <= i - 1
            assert data[prev + 1:i + 1] in tier50.vocab.entries


class TestBacktrack:
    def test_single_byte_chain(self):
        v = toy_vocab()
        t = build_reversed_trie(v)
        state = compute_dp_state(t, b"q")
        assert state.par[0] == -1
        seg = backtrack(state, b"q", v)
        assert seg.pieces(v) == [b"q"]

    def test_direct_chain(self):
        v, t = small_vocab(b"a", b"b", b"ab")
        state = compute_dp_state(t, b"ab")
        assert state.par[1] == -1
        assert backtrack(state, b"ab", v).pieces(v) == [b"ab"]

    def test_all_single_bytes_worst_case(self):
        v = toy_vocab()
        t = build_reversed_trie(v)
        data = b"hello"
        state = compute_dp_state(t, data)
        seg = backtrack(state, data, v)
        assert seg.count == len(data)

    def test_matches_fused_path(self, tier100):
        for text in ("policymakers", "yükselme", "a", " örnek!"):
            data = text.encode()
            fused = encode_optimal(tier100.vocab, tier100.trie, data)
            state = compute_dp_state(tier100.trie, data)
            assert backtrack(state, data, tier100.vocab).token_ids == fused.token_ids

    def test_out_of_range_pointer(self):
        v = toy_vocab()
        state = DpState(dp=[0, 1, 2], par=[-1, 5], n=2)
        with pytest.raises(InternalConsistencyError, match="out of range"):
            backtrack(state, b"ab", v)

    def test_cycle_detected(self):
        v = toy_vocab(b"ab")
        # par[1] -> 0, par[0] -> 0 never reaches -1
        state = DpState(dp=[0, 1, 1], par=[0, 0], n=2)
        with pytest.raises(InternalConsistencyError):
            backtrack(state, b"ab", v)

    def test_substring_missing_from_vocab(self):
        v, _ = small_vocab(b"a", b"b")
        state = DpState(dp=[0, 1, 1], par=[-1, -1], n=2)  # claims "ab" is one token
        with pytest.raises(InternalConsistencyError, match="not in vocabulary"):
            backtrack(state, b"ab", v)

    def test_length_mismatch(self):
        v = toy_vocab()
        state = DpState(dp=[0, 1], par=[-1], n=1)
        with pytest.raises(InternalConsistencyError, match="length"):
            backtrack(state, b"ab", v)

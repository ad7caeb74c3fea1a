"""Token bit-codes: exact code words and round trips, with decoding total on junk input.

Code-word oracles are written out bit by bit; the decoder must survive
arbitrary bit vectors (repair), so the fuzz tests draw random bits and only
assert validity of the result.
"""
from __future__ import annotations

import json

import numpy as np
import pytest

from passqubo import EncodingScheme, decode_token, encode_token, make_scheme
from passqubo import decode_password, encode_password

RNG = np.random.default_rng  # shorthand for repair randomness


def test_bits_per_token_by_scheme():
    assert EncodingScheme("one-hot", 256).k == 256
    assert make_scheme("binary8", 256).k == 8
    assert make_scheme("stacked16", 256).k == 16
    assert make_scheme("stacked20", 256).k == 20
    assert make_scheme("stacked24", 256).k == 24
    # four blocks of two states each hold 16 ids in 8 bits
    assert EncodingScheme("stacked", 16, (2, 2, 2, 2)).k == 8


def test_binary_code_words_big_endian():
    scheme = make_scheme("binary8", 256)
    assert encode_token(scheme, 255).tolist() == [1] * 8
    assert encode_token(scheme, 1).tolist() == [0] * 7 + [1]
    assert encode_token(scheme, 128).tolist() == [1] + [0] * 7
    assert encode_token(scheme, 0).tolist() == [0] * 8


def test_one_hot_code_words():
    scheme = EncodingScheme("one-hot", 5)
    assert encode_token(scheme, 3).tolist() == [0, 0, 0, 1, 0]
    assert encode_token(scheme, 0).tolist() == [1, 0, 0, 0, 0]


def test_stacked_code_word_id_zero():
    # id 0 has every mixed-radix digit 0: first slot of each block is hot
    scheme = make_scheme("stacked20", 256)  # blocks (2, 2, 8, 8)
    expected = [1, 0] + [1, 0] + [1, 0, 0, 0, 0, 0, 0, 0] + [1, 0, 0, 0, 0, 0, 0, 0]
    assert encode_token(scheme, 0).tolist() == expected


def test_stacked_code_word_low_digit_first():
    # id 1 flips only the first (least significant) block
    scheme = make_scheme("stacked20", 256)
    expected = [0, 1] + [1, 0] + [1, 0, 0, 0, 0, 0, 0, 0] + [1, 0, 0, 0, 0, 0, 0, 0]
    assert encode_token(scheme, 1).tolist() == expected


def test_encode_rejects_out_of_range_id():
    scheme = make_scheme("binary8", 16)
    with pytest.raises(ValueError):
        encode_token(scheme, 16)
    with pytest.raises(ValueError):
        encode_token(scheme, -1)


@pytest.mark.parametrize("scheme", [
    EncodingScheme("one-hot", 256),
    make_scheme("binary8", 256),
    make_scheme("stacked16", 256),
    make_scheme("stacked20", 256),
    make_scheme("stacked24", 256),
])
def test_round_trip_every_id(scheme):
    rng = RNG(0)
    for token_id in range(256):
        bits = encode_token(scheme, token_id)
        assert decode_token(scheme, bits, rng) == token_id


def test_repair_multiple_hot_bits_picks_uniformly_among_them():
    scheme = EncodingScheme("one-hot", 4)
    bits = np.array([0, 1, 0, 1], dtype=np.uint8)
    rng = RNG(3)
    seen = {decode_token(scheme, bits, rng) for _ in range(200)}
    assert seen == {1, 3}


def test_repair_no_hot_bits_picks_any_position():
    scheme = EncodingScheme("one-hot", 4)
    bits = np.zeros(4, dtype=np.uint8)
    rng = RNG(3)
    seen = {decode_token(scheme, bits, rng) for _ in range(400)}
    assert seen == {0, 1, 2, 3}


def test_binary_value_beyond_vocab_wraps():
    # 4 bits cover 0..15 but T=10; value 13 decodes to 3
    scheme = EncodingScheme("binary", 10)
    bits = np.array([1, 1, 0, 1], dtype=np.uint8)
    assert decode_token(scheme, bits, RNG(0)) == 3


def test_stacked_value_beyond_vocab_wraps():
    # blocks (2, 2) encode 0..3 but T=3; digits (1, 1) give 3, wrapping to 0
    scheme = EncodingScheme("stacked", 3, (2, 2))
    bits = np.array([0, 1, 0, 1], dtype=np.uint8)
    assert decode_token(scheme, bits, RNG(0)) == 0


def test_scheme_validation():
    with pytest.raises(ValueError):
        EncodingScheme("stacked", 256, (2, 2))  # 4 < 256 ids
    with pytest.raises(ValueError):
        EncodingScheme("stacked", 4, (1, 4))  # degenerate block
    with pytest.raises(ValueError):
        EncodingScheme("binary", 8, (2, 2))  # binary takes no blocks
    with pytest.raises(ValueError):
        EncodingScheme("gray", 8)
    with pytest.raises(ValueError):
        make_scheme("stacked12", 256)


def test_scheme_json_round_trip():
    scheme = make_scheme("stacked24", 256)
    payload = scheme.to_json_dict()
    assert payload["bit_order"] == "big-endian"
    assert EncodingScheme.from_json_dict(payload) == scheme
    bad = dict(payload, k=7)
    with pytest.raises(ValueError):
        EncodingScheme.from_json_dict(bad)
    # survives a real serialize/parse cycle too
    again = EncodingScheme.from_json_dict(json.loads(json.dumps(payload)))
    assert again == scheme


def test_encode_password_pads_with_end_marker():
    scheme = make_scheme("binary8", 4)  # k = 2
    eow = 2
    bits = encode_password(scheme, [0, eow], M=3, eow_index=eow)
    assert bits.tolist() == [0, 0, 1, 0, 1, 0]
    assert bits.dtype == np.uint8


def test_encode_password_rejects_overflow_and_interior_eow():
    scheme = make_scheme("binary8", 4)
    with pytest.raises(ValueError):
        encode_password(scheme, [0, 1, 0, 1], M=3, eow_index=2)
    with pytest.raises(ValueError):
        encode_password(scheme, [2, 0], M=3, eow_index=2)


def test_decode_password_truncates_at_first_end_marker():
    scheme = make_scheme("binary8", 8)  # k = 3
    eow = 6
    bits = np.concatenate([
        encode_token(scheme, 5),
        encode_token(scheme, eow),
        encode_token(scheme, 7),
    ])
    assert decode_password(scheme, bits, RNG(0), eow) == [5]


def test_decode_password_without_end_marker_keeps_all_tokens():
    scheme = make_scheme("binary8", 8)
    bits = np.concatenate([encode_token(scheme, i) for i in (1, 2, 3)])
    assert decode_password(scheme, bits, RNG(0), eow_index=6) == [1, 2, 3]


def test_encode_decode_password_round_trip(desk_vocab):
    from passqubo import detokenize, tokenize

    scheme = EncodingScheme("stacked", 16, (2, 2, 2, 2))
    rng = RNG(1)
    for word in ("abab", "cdcd", "gh", "abgh"):
        seq = tokenize(desk_vocab, word)
        bits = encode_password(scheme, seq, M=3, eow_index=desk_vocab.eow_index)
        assert bits.shape == (24,)
        back = decode_password(scheme, bits, rng, desk_vocab.eow_index)
        assert detokenize(desk_vocab, back) == word

"""Show how token ids become fixed-width bit blocks, and how decoding
repairs arbitrary bit patterns.

Three code families cover the trade-off between bit count and how much of
the bit space is valid:

  one-hot   T bits per token, exactly one set
  binary    ceil(log2 T) bits, every pattern decodes
  stacked   a few small one-hot blocks read as mixed-radix digits

A password is M consecutive token blocks, padded with the end-of-word token.
Decoding never fails: broken one-hot blocks are repaired with explicit
randomness and out-of-range values wrap around the vocabulary.

Run:  python demos/02_encodings.py
"""
from __future__ import annotations

import numpy as np

from passqubo import (
    EncodingScheme,
    decode_password,
    decode_token,
    encode_password,
    encode_token,
    make_scheme,
)


def show_code_words() -> None:
    schemes = {
        "one-hot": EncodingScheme("one-hot", 16),
        "binary": make_scheme("binary8", 16),
        "stacked (2,2,2,2)": EncodingScheme("stacked", 16, (2, 2, 2, 2)),
    }
    print("code words for T = 16:")
    for name, scheme in schemes.items():
        print(f"\n  {name}, {scheme.k} bits per token")
        for token_id in (0, 1, 5, 15):
            bits = "".join(map(str, encode_token(scheme, token_id)))
            print(f"    id {token_id:2d} -> {bits}")


def show_repair() -> None:
    scheme = EncodingScheme("one-hot", 4)
    rng = np.random.default_rng(0)
    print("\nrepairing invalid one-hot blocks (T = 4):")
    for bits in ([0, 1, 0, 1], [0, 0, 0, 0], [1, 1, 1, 1]):
        arr = np.array(bits, dtype=np.uint8)
        picks = sorted({decode_token(scheme, arr, rng) for _ in range(64)})
        print(f"  bits {bits} -> decodes into {picks}")

    binary = EncodingScheme("binary", 10)
    arr = np.array([1, 1, 0, 1], dtype=np.uint8)  # value 13 against T = 10
    print(f"  binary value 13 with T=10 wraps to "
          f"{decode_token(binary, arr, rng)}")


def show_passwords() -> None:
    scheme = make_scheme("binary8", 16)
    eow = 15
    rng = np.random.default_rng(1)
    seq = [3, 7]
    bits = encode_password(scheme, seq, M=4, eow_index=eow)
    print(f"\npassword tokens {seq} padded to M=4: "
          f"{''.join(map(str, bits))}")
    print(f"decoded back: {decode_password(scheme, bits, rng, eow)} "
          f"(padding stripped at the first end marker)")


def main() -> None:
    show_code_words()
    show_repair()
    show_passwords()


if __name__ == "__main__":
    main()

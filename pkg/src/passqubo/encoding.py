"""Bit codes for token indices, from one-hot through base-2 to stacked digit blocks.

Token ids are 0-based throughout the package; the classic code constructions
(k-bit big-endian binary, mixed-radix digit blocks) apply to the id directly.
A password of at most M tokens becomes a bit vector of M fixed-width blocks,
padded with end-of-word blocks.

Decoding is total: invalid one-hot blocks are repaired with caller-supplied
randomness (several hot bits: pick one uniformly; none: pick a position
uniformly), and values that exceed the vocabulary size, which can only occur
when the code space is larger than T, wrap modulo T.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tokenizer import TokenSequence

TABLE_BLOCKS = {
    "stacked16": (2, 2, 2, 2, 2, 2, 2, 2),
    "stacked20": (2, 2, 8, 8),
    "stacked24": (2, 2, 2, 2, 16),
}
SCHEME_NAMES = ("binary8", "stacked16", "stacked20", "stacked24")


@dataclass(frozen=True)
class EncodingScheme:
    kind: str  # "one-hot" | "binary" | "stacked"
    T: int
    block_sizes: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.T < 2:
            raise ValueError("vocabulary size T must be >= 2")
        if self.kind == "one-hot":
            if self.block_sizes is not None:
                raise ValueError("one-hot takes no block sizes")
        elif self.kind == "binary":
            if self.block_sizes is not None:
                raise ValueError("binary takes no block sizes")
        elif self.kind == "stacked":
            if not self.block_sizes:
                raise ValueError("stacked needs block sizes")
            if any(k < 2 for k in self.block_sizes):
                raise ValueError("stacked blocks must each hold >= 2 values")
            if math.prod(self.block_sizes) < self.T:
                raise ValueError(
                    f"stacked blocks encode {math.prod(self.block_sizes)} values, "
                    f"fewer than T={self.T}"
                )
        else:
            raise ValueError(f"unknown encoding kind {self.kind!r}")
        object.__setattr__(self, "block_sizes",
                           tuple(self.block_sizes) if self.block_sizes else None)

    @property
    def k(self) -> int:
        """Bits per token."""
        if self.kind == "one-hot":
            return self.T
        if self.kind == "binary":
            return (self.T - 1).bit_length()
        return sum(self.block_sizes)

    @property
    def one_hot_blocks(self) -> tuple[int, ...]:
        """Sizes of the one-hot sub-blocks inside one token block (empty for binary)."""
        if self.kind == "one-hot":
            return (self.T,)
        if self.kind == "stacked":
            return self.block_sizes
        return ()

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "T": self.T,
            "k": self.k,
            "block_sizes": list(self.block_sizes) if self.block_sizes else None,
            "bit_order": "big-endian",
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "EncodingScheme":
        blocks = payload.get("block_sizes")
        scheme = cls(payload["kind"], payload["T"],
                     tuple(blocks) if blocks else None)
        if payload.get("k") is not None and payload["k"] != scheme.k:
            raise ValueError(f"stored k={payload['k']} inconsistent with scheme k={scheme.k}")
        return scheme


def make_scheme(name: str, T: int = 256) -> EncodingScheme:
    """Build one of the named schemes for a vocabulary of T tokens."""
    if name == "binary8":
        return EncodingScheme("binary", T)
    if name in TABLE_BLOCKS:
        return EncodingScheme("stacked", T, TABLE_BLOCKS[name])
    raise ValueError(f"unknown encoding {name!r}; valid names: {', '.join(SCHEME_NAMES)}")


def encode_token(scheme: EncodingScheme, index: int) -> np.ndarray:
    """Encode a 0-based token id as a length-k bit vector (dtype uint8)."""
    if not (0 <= index < scheme.T):
        raise ValueError(f"token id {index} outside [0, {scheme.T})")
    k = scheme.k
    bits = np.zeros(k, dtype=np.uint8)
    if scheme.kind == "one-hot":
        bits[index] = 1
    elif scheme.kind == "binary":
        for b in range(k):
            bits[b] = (index >> (k - 1 - b)) & 1
    else:
        rem = index
        offset = 0
        for size in scheme.block_sizes:  # least-significant digit first
            bits[offset + rem % size] = 1
            rem //= size
            offset += size
    return bits


def decode_token(scheme: EncodingScheme, bits: np.ndarray,
                 rng: np.random.Generator) -> int:
    """Decode (and if necessary repair) one token block back to a 0-based id."""
    bits = np.asarray(bits)
    if bits.shape != (scheme.k,):
        raise ValueError(f"expected {scheme.k} bits, got shape {bits.shape}")
    if scheme.kind == "binary":
        value = 0
        for b in bits:
            value = (value << 1) | int(b)
        return value % scheme.T
    value = 0
    place = 1
    offset = 0
    for size in scheme.one_hot_blocks:
        hot = np.flatnonzero(bits[offset:offset + size])
        if len(hot) == 1:
            digit = int(hot[0])
        elif len(hot) > 1:
            digit = int(rng.choice(hot))
        else:
            digit = int(rng.integers(size))
        value += digit * place
        place *= size
        offset += size
    return value % scheme.T


def encode_password(scheme: EncodingScheme, seq: TokenSequence, M: int,
                    eow_index: int) -> np.ndarray:
    """Concatenate token encodings, padding with end-of-word blocks to M tokens."""
    if len(seq) > M:
        raise ValueError(f"sequence of {len(seq)} tokens exceeds M={M}")
    seen_eow = False
    for t in seq:
        if seen_eow and t != eow_index:
            raise ValueError("token after end-of-word in sequence")
        seen_eow = seen_eow or t == eow_index
    padded = list(seq) + [eow_index] * (M - len(seq))
    return np.concatenate([encode_token(scheme, t) for t in padded])


def decode_password(scheme: EncodingScheme, bits: np.ndarray,
                    rng: np.random.Generator, eow_index: int) -> TokenSequence:
    """Decode M token blocks, truncating at the first end-of-word token."""
    bits = np.asarray(bits)
    k = scheme.k
    if bits.ndim != 1 or bits.size % k:
        raise ValueError(f"bit vector length {bits.size} is not a multiple of k={k}")
    seq: TokenSequence = []
    for start in range(0, bits.size, k):
        token = decode_token(scheme, bits[start:start + k], rng)
        if token == eow_index:
            break
        seq.append(token)
    return seq

"""Byte-pair-encoding tokenizer over password corpora.

Vocabulary layout: sorted base characters, then the end-of-word token, then
merged tokens in creation order. The end-of-word token is a single NUL
character, which cannot collide with any merged token because corpora are
restricted to printable ASCII. It participates only in padding, never in
merges.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .errors import OutOfVocabularyError, VocabularySizeError

EOW = "\x00"

TokenSequence = list[int]


@dataclass
class TokenVocabulary:
    tokens: list[str]
    merges: list[tuple[str, str]]
    eow_index: int

    def __post_init__(self) -> None:
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("duplicate tokens in vocabulary")
        if any(not t for t in self.tokens):
            raise ValueError("empty token in vocabulary")
        if not (0 <= self.eow_index < len(self.tokens)):
            raise ValueError("eow_index out of range")
        present = set(self.tokens)
        for left, right in self.merges:
            if left + right not in present:
                raise ValueError(f"merge product {left + right!r} missing from tokens")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.tokens)}


def _apply_merge(tokens: list[str], left: str, right: str) -> list[str]:
    # greedy left-to-right, non-overlapping; shared by training and tokenize
    # so replayed segmentations match training-time segmentations
    out: list[str] = []
    i = 0
    while i < len(tokens):
        if i + 1 < len(tokens) and tokens[i] == left and tokens[i + 1] == right:
            out.append(left + right)
            i += 2
        else:
            out.append(tokens[i])
            i += 1
    return out


def train_bpe(corpus, target_vocab_size: int) -> TokenVocabulary:
    """Learn a vocabulary of exactly target_vocab_size tokens (end-of-word included).

    Most frequent adjacent pair first, counted with corpus multiplicity; ties
    broken by lexicographic order of the concatenated pair. Raises
    VocabularySizeError when the corpus cannot support that many tokens,
    stating the achievable size.
    """
    word_counts = Counter(corpus)
    base = sorted({ch for word in word_counts for ch in word})
    if target_vocab_size < len(base) + 1:
        raise VocabularySizeError(
            f"target size {target_vocab_size} below base alphabet "
            f"plus end-of-word ({len(base) + 1})"
        )
    segments: dict[str, list[str]] = {w: list(w) for w in word_counts}
    merges: list[tuple[str, str]] = []
    while len(base) + 1 + len(merges) < target_vocab_size:
        pair_counts: Counter[tuple[str, str]] = Counter()
        for word, count in word_counts.items():
            seg = segments[word]
            for a, b in zip(seg, seg[1:]):
                pair_counts[(a, b)] += count
        if not pair_counts:
            raise VocabularySizeError(
                f"corpus supports at most {len(base) + 1 + len(merges)} tokens, "
                f"{target_vocab_size} requested"
            )
        left, right = min(
            pair_counts,
            key=lambda p: (-pair_counts[p], p[0] + p[1], p),
        )
        merges.append((left, right))
        for word in segments:
            segments[word] = _apply_merge(segments[word], left, right)
    tokens = base + [EOW] + [l + r for l, r in merges]
    return TokenVocabulary(tokens, merges, eow_index=len(base))


def tokenize(vocab: TokenVocabulary, password: str) -> TokenSequence:
    """Segment a password by replaying the vocabulary's merges in training order."""
    index = vocab.index
    for ch in password:
        if ch not in index:
            raise OutOfVocabularyError(f"character {ch!r} not in vocabulary")
    parts = list(password)
    for left, right in vocab.merges:
        parts = _apply_merge(parts, left, right)
    return [index[p] for p in parts]


def detokenize(vocab: TokenVocabulary, seq: TokenSequence) -> str:
    """Concatenate token strings, skipping end-of-word padding."""
    return "".join(vocab.tokens[i] for i in seq if i != vocab.eow_index)


def save_vocab(vocab: TokenVocabulary, path: str) -> None:
    payload = {
        "tokens": vocab.tokens,
        "merges": [list(m) for m in vocab.merges],
        "eow_index": vocab.eow_index,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_vocab(path: str) -> TokenVocabulary:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    merges = [tuple(m) for m in payload["merges"]]
    return TokenVocabulary(list(payload["tokens"]), merges, payload["eow_index"])

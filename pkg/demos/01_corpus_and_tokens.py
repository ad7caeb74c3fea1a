"""Walk through corpus loading and byte-pair tokenization.

Passwords are plain printable-ASCII lines. The tokenizer learns a fixed-size
vocabulary by repeatedly merging the most frequent adjacent symbol pair, so
common fragments ("ab", "abab") become single tokens and typical passwords
compress to only a handful of tokens.

Run:  python demos/01_corpus_and_tokens.py
"""
from __future__ import annotations

import numpy as np

from passqubo import PasswordCorpus, filter_by_token_length, tokenize, train_bpe

POOL = ["abab", "abcd", "cdcd", "efef", "gh", "abgh", "cdef"]
WEIGHTS = [60, 40, 30, 25, 20, 15, 10]


def build_corpus(count: int = 300, seed: int = 42) -> PasswordCorpus:
    """Weighted draws from a small pool, standing in for a leaked corpus."""
    rng = np.random.default_rng(seed)
    w = np.asarray(WEIGHTS, dtype=float)
    picks = rng.choice(len(POOL), size=count, p=w / w.sum())
    return PasswordCorpus([POOL[i] for i in picks], min_len=1, max_len=32)


def main() -> None:
    corpus = build_corpus()
    print(f"corpus: {len(corpus)} passwords, "
          f"{len(set(corpus.passwords))} distinct")

    vocab = train_bpe(corpus, target_vocab_size=16)
    print(f"\nvocabulary of {len(vocab.tokens)} tokens "
          f"({len(vocab.merges)} merges, end marker at index {vocab.eow_index})")
    print("merge order:")
    for step, (left, right) in enumerate(vocab.merges, start=1):
        print(f"  {step}. {left!r} + {right!r} -> {left + right!r}")

    print("\ntokenizations:")
    for word in POOL:
        seq = tokenize(vocab, word)
        parts = " | ".join(vocab.tokens[i] for i in seq)
        print(f"  {word:6s} -> {len(seq)} tokens: {parts}")

    # downstream models fix a token budget M; longer passwords are dropped
    budget = 3
    kept = filter_by_token_length(corpus, vocab, max_tokens=budget)
    print(f"\ntoken budget M={budget} keeps {len(kept)}/{len(corpus)} passwords")


if __name__ == "__main__":
    main()

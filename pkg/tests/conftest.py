"""Shared corpora and vocabularies for the test suite.

The desk-scale corpus is a weighted draw from a small pool of segmentable
words, so byte-pair merges and the learned distribution both have structure
worth fitting. Session scope keeps the BPE runs out of individual tests.
"""
from __future__ import annotations

import numpy as np
import pytest

from passqubo import PasswordCorpus, train_bpe

DESK_POOL = ["abab", "abcd", "cdcd", "efef", "gh", "abgh", "cdef"]
DESK_WEIGHTS = [60, 40, 30, 25, 20, 15, 10]


def draw_desk_corpus(count: int = 200, seed: int = 42) -> PasswordCorpus:
    rng = np.random.default_rng(seed)
    w = np.asarray(DESK_WEIGHTS, dtype=float)
    picks = rng.choice(len(DESK_POOL), size=count, p=w / w.sum())
    return PasswordCorpus([DESK_POOL[i] for i in picks], 1, 32)


@pytest.fixture(scope="session")
def desk_corpus() -> PasswordCorpus:
    return draw_desk_corpus()


@pytest.fixture(scope="session")
def desk_vocab(desk_corpus):
    return train_bpe(desk_corpus, 16)


@pytest.fixture(scope="session")
def printable_vocab():
    # Covers all 95 printable characters so a 256-token vocabulary exists.
    chars = [chr(c) for c in range(0x20, 0x7F)]
    rng = np.random.default_rng(7)
    lines = ["".join(rng.choice(chars, size=10)) for _ in range(3000)]
    lines.append("".join(chars))
    corpus = PasswordCorpus(lines, 1, 128)
    return train_bpe(corpus, 256)

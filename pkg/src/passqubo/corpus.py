"""Password corpus loading and filtering, plus cross-validation splits.

A corpus is a multiset: duplicate passwords are kept and carry weight in
everything downstream (pair counts, empirical moments, overlap scores).
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpusError

logger = logging.getLogger(__name__)

PRINTABLE_ASCII = frozenset(chr(c) for c in range(0x20, 0x7F))


@dataclass
class PasswordCorpus:
    """A multiset of passwords over printable ASCII, with length bounds."""

    passwords: list[str]
    min_len: int
    max_len: int
    alphabet: frozenset[str] = field(default=PRINTABLE_ASCII)

    def __post_init__(self) -> None:
        if not (1 <= self.min_len <= self.max_len):
            raise ValueError(f"bad length bounds [{self.min_len}, {self.max_len}]")
        for pw in self.passwords:
            if not (self.min_len <= len(pw) <= self.max_len):
                raise ValueError(f"password length {len(pw)} outside bounds")
            if not set(pw) <= self.alphabet:
                raise ValueError("password contains characters outside the alphabet")

    def __len__(self) -> int:
        return len(self.passwords)

    def __iter__(self):
        return iter(self.passwords)


def load_corpus(path: str, min_len: int = 1, max_len: int = 32) -> PasswordCorpus:
    """Read one password per line, keeping printable-ASCII lines within bounds.

    Lines are stripped of the trailing newline only; interior whitespace is
    password content. Lines with characters outside 0x20..0x7E or with length
    outside [min_len, max_len] are dropped (with multiplicity preserved for
    the survivors). Raises EmptyCorpusError if nothing survives.
    """
    kept: list[str] = []
    dropped = 0
    with open(path, encoding="utf-8", errors="surrogateescape") as fh:
        for line in fh:
            pw = line.rstrip("\n")
            if min_len <= len(pw) <= max_len and set(pw) <= PRINTABLE_ASCII:
                kept.append(pw)
            else:
                dropped += 1
    if not kept:
        raise EmptyCorpusError(f"no usable passwords in {path!r} ({dropped} dropped)")
    if dropped:
        logger.info("load_corpus: kept %d passwords, dropped %d", len(kept), dropped)
    return PasswordCorpus(kept, min_len, max_len)


def filter_by_token_length(corpus: PasswordCorpus, vocab, max_tokens: int) -> PasswordCorpus:
    """Keep passwords that tokenize to at most max_tokens tokens (pre-padding).

    Passwords the vocabulary cannot tokenize at all are counted and reported
    via a warning, never silently ignored.
    """
    from .tokenizer import tokenize
    from .errors import OutOfVocabularyError

    if max_tokens < 1:
        raise ValueError("max_tokens must be >= 1")
    kept: list[str] = []
    oov = 0
    for pw in corpus:
        try:
            seq = tokenize(vocab, pw)
        except OutOfVocabularyError:
            oov += 1
            continue
        if len(seq) <= max_tokens:
            kept.append(pw)
    if oov:
        logger.warning("filter_by_token_length: %d passwords not tokenizable, skipped", oov)
    if not kept:
        raise EmptyCorpusError(f"no passwords tokenize to <= {max_tokens} tokens")
    return PasswordCorpus(kept, corpus.min_len, corpus.max_len, corpus.alphabet)


@dataclass
class SplitPlan:
    """Assignment of every corpus index to one of fold_count folds."""

    fold_count: int
    seed: int
    assignments: list[int]

    def __post_init__(self) -> None:
        if self.fold_count < 2:
            raise ValueError("fold_count must be >= 2")
        sizes = np.bincount(self.assignments, minlength=self.fold_count)
        if len(sizes) != self.fold_count or sizes.max() - sizes.min() > 1:
            raise ValueError("fold sizes must differ by at most one")

    def eval_indices(self, fold: int) -> list[int]:
        self._check_fold(fold)
        return [i for i, f in enumerate(self.assignments) if f == fold]

    def train_indices(self, fold: int) -> list[int]:
        self._check_fold(fold)
        return [i for i, f in enumerate(self.assignments) if f != fold]

    def _check_fold(self, fold: int) -> None:
        if not (0 <= fold < self.fold_count):
            raise ValueError(f"fold {fold} outside [0, {self.fold_count})")


def make_splits(corpus: PasswordCorpus, folds: int, seed: int) -> SplitPlan:
    """Deterministically partition corpus indices into folds of near-equal size."""
    n = len(corpus)
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if folds > n:
        raise ValueError(f"cannot split {n} passwords into {folds} folds")
    perm = np.random.default_rng(seed).permutation(n)
    assignments = [0] * n
    base, extra = divmod(n, folds)
    start = 0
    for fold in range(folds):
        size = base + (1 if fold < extra else 0)
        for idx in perm[start:start + size]:
            assignments[int(idx)] = fold
        start += size
    return SplitPlan(folds, seed, assignments)


def save_split_plan(plan: SplitPlan, path: str) -> None:
    payload = {
        "fold_count": plan.fold_count,
        "seed": plan.seed,
        "assignments": plan.assignments,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_split_plan(path: str) -> SplitPlan:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return SplitPlan(payload["fold_count"], payload["seed"], list(payload["assignments"]))

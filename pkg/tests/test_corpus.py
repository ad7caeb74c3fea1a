from __future__ import annotations

import json

import numpy as np
import pytest

from passqubo import (
    EmptyCorpusError,
    PasswordCorpus,
    SplitPlan,
    filter_by_token_length,
    load_corpus,
    load_split_plan,
    make_splits,
    save_split_plan,
    train_bpe,
)


def test_corpus_is_a_multiset():
    corpus = PasswordCorpus(["aa", "aa", "bb"], 1, 8)
    assert len(corpus) == 3
    assert list(corpus) == ["aa", "aa", "bb"]


def test_corpus_rejects_out_of_bounds_and_bad_chars():
    with pytest.raises(ValueError):
        PasswordCorpus(["toolongword"], 1, 4)
    with pytest.raises(ValueError):
        PasswordCorpus([""], 1, 4)
    with pytest.raises(ValueError):
        PasswordCorpus(["café"], 1, 8)
    with pytest.raises(ValueError):
        PasswordCorpus(["a\tb"], 1, 8)


def test_load_corpus_drops_invalid_lines(tmp_path):
    path = tmp_path / "pw.txt"
    path.write_text("good\n" + "x" * 40 + "\ncafé\nalso good\n",
                    encoding="utf-8")
    corpus = load_corpus(str(path), min_len=1, max_len=32)
    assert list(corpus) == ["good", "also good"]


def test_load_corpus_keeps_duplicates_and_inner_spaces(tmp_path):
    path = tmp_path / "pw.txt"
    path.write_text("a b\na b\n", encoding="utf-8")
    corpus = load_corpus(str(path))
    assert list(corpus) == ["a b", "a b"]


def test_load_corpus_all_dropped_raises(tmp_path):
    path = tmp_path / "pw.txt"
    path.write_text("é\n", encoding="utf-8")
    with pytest.raises(EmptyCorpusError):
        load_corpus(str(path))


def test_filter_by_token_length_drops_long_and_oov():
    corpus = PasswordCorpus(["aaab", "aab", "ab"], 1, 8)
    vocab = train_bpe(corpus, 4)  # tokens a, b, EOW, aa
    # aaab -> [aa, a, b] (3 tokens), aab -> [aa, b] (2), ab -> [a, b] (2)
    kept = filter_by_token_length(corpus, vocab, 2)
    assert list(kept) == ["aab", "ab"]
    mixed = PasswordCorpus(["ab", "zz"], 1, 8)
    kept2 = filter_by_token_length(mixed, vocab, 4)
    assert list(kept2) == ["ab"]  # zz is out of vocabulary


def test_filter_by_token_length_empty_result_raises():
    corpus = PasswordCorpus(["aaab"], 1, 8)
    vocab = train_bpe(corpus, 4)
    with pytest.raises(EmptyCorpusError):
        filter_by_token_length(corpus, vocab, 1)


def test_make_splits_partitions_evenly():
    corpus = PasswordCorpus([f"pw{i:02d}" for i in range(23)], 1, 8)
    plan = make_splits(corpus, folds=5, seed=0)
    sizes = [len(plan.eval_indices(f)) for f in range(5)]
    assert sum(sizes) == 23
    assert max(sizes) - min(sizes) <= 1
    for f in range(5):
        ev = set(plan.eval_indices(f))
        tr = set(plan.train_indices(f))
        assert ev | tr == set(range(23))
        assert ev & tr == set()


def test_make_splits_deterministic():
    corpus = PasswordCorpus([f"pw{i:02d}" for i in range(40)], 1, 8)
    a = make_splits(corpus, folds=4, seed=9)
    b = make_splits(corpus, folds=4, seed=9)
    c = make_splits(corpus, folds=4, seed=10)
    assert a.assignments == b.assignments
    assert a.assignments != c.assignments


def test_split_plan_round_trip(tmp_path):
    corpus = PasswordCorpus([f"pw{i:02d}" for i in range(17)], 1, 8)
    plan = make_splits(corpus, folds=3, seed=5)
    path = tmp_path / "plan.json"
    save_split_plan(plan, str(path))
    back = load_split_plan(str(path))
    assert back == plan
    # serialization is canonical: rewriting produces identical bytes
    path2 = tmp_path / "plan2.json"
    save_split_plan(back, str(path2))
    assert path.read_bytes() == path2.read_bytes()
    payload = json.loads(path.read_text())
    assert payload["fold_count"] == 3
    assert payload["seed"] == 5
    assert len(payload["assignments"]) == 17


def test_split_plan_validates_balance():
    with pytest.raises(ValueError):
        # fold 0 has 3 members, fold 1 has 1: off by more than one
        SplitPlan(2, 0, [0, 0, 0, 1])


def test_splits_cover_every_fold_label():
    corpus = PasswordCorpus([f"pw{i:02d}" for i in range(10)], 1, 8)
    plan = make_splits(corpus, folds=5, seed=1)
    assert sorted(set(plan.assignments)) == [0, 1, 2, 3, 4]
    assert np.bincount(plan.assignments, minlength=5).tolist() == [2] * 5

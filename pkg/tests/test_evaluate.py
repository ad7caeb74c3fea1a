"""Edit distance and BK-tree lookup, plus report plumbing.

The independent oracle here is a full-matrix Wagner-Fischer DP, implemented
inline with plain lists; the library's two-row and batched variants must
agree with it everywhere.
"""
from __future__ import annotations

import json
import string

import numpy as np
import pytest

from passqubo import (
    EOW,
    TokenVocabulary,
    build_bk_tree,
    edit_distance,
    evaluate_generated,
    min_edit_distance,
    overlap_score,
    save_report_csv,
    save_report_json,
    uniform_baseline,
)
from passqubo.evaluate import _distances_to_many, _encode_strings


def full_matrix_distance(a: str, b: str) -> int:
    rows, cols = len(a) + 1, len(b) + 1
    dp = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        dp[i][0] = i
    for j in range(cols):
        dp[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            dp[i][j] = min(dp[i - 1][j] + 1,
                           dp[i][j - 1] + 1,
                           dp[i - 1][j - 1] + cost)
    return dp[-1][-1]


def random_strings(count: int, rng, lo: int = 0, hi: int = 10) -> list[str]:
    alphabet = np.array(list(string.ascii_lowercase + string.digits))
    out = []
    for _ in range(count):
        length = int(rng.integers(lo, hi + 1))
        out.append("".join(rng.choice(alphabet, size=length)))
    return out


def test_edit_distance_hand_values():
    assert edit_distance("kitten", "sitting") == 3
    assert edit_distance("", "abc") == 3
    assert edit_distance("abc", "") == 3
    assert edit_distance("same", "same") == 0
    assert edit_distance("abc", "abd") == 1
    assert edit_distance("ab", "ba") == 2


def test_edit_distance_matches_full_matrix_oracle():
    rng = np.random.default_rng(41)
    for a, b in zip(random_strings(120, rng), random_strings(120, rng)):
        assert edit_distance(a, b) == full_matrix_distance(a, b)


def test_edit_distance_is_symmetric():
    rng = np.random.default_rng(43)
    for a, b in zip(random_strings(40, rng), random_strings(40, rng)):
        assert edit_distance(a, b) == edit_distance(b, a)


def test_batched_distances_match_scalar():
    rng = np.random.default_rng(47)
    pool = random_strings(80, rng)
    mat, lengths = _encode_strings(pool)
    queries = random_strings(15, rng, lo=0, hi=14)
    for q in queries:
        batched = _distances_to_many(q, mat, lengths)
        assert batched.tolist() == [edit_distance(q, p) for p in pool]


def test_bk_tree_holds_sorted_distinct_strings():
    tree = build_bk_tree(["b", "a", "c", "a"])
    assert tree.strings == ["a", "b", "c"]


def test_bk_tree_search_exact_on_random_data():
    rng = np.random.default_rng(53)
    pool = random_strings(300, rng, lo=2, hi=9)
    tree = build_bk_tree(pool)
    distinct = sorted(set(pool))
    for q in random_strings(60, rng, lo=0, hi=12):
        want = min(edit_distance(q, p) for p in distinct)
        assert min_edit_distance(tree, q) == want


def test_bk_tree_member_query_is_zero():
    tree = build_bk_tree(["alpha", "beta", "gamma"])
    assert min_edit_distance(tree, "beta") == 0
    assert min_edit_distance(tree, "betb") == 1


def test_bk_tree_rejects_empty_set():
    with pytest.raises(ValueError):
        build_bk_tree([])


def test_overlap_score_counts_verbatim_hits():
    assert overlap_score(["a", "b"], ["a", "b", "c"]) == 1.0
    assert overlap_score(["a", "z"], ["a", "b"]) == 0.5
    assert overlap_score(["x", "y"], ["a"]) == 0.0
    # duplicates in the generated list both count
    assert overlap_score(["a", "a"], ["a"]) == 1.0
    with pytest.raises(ValueError):
        overlap_score([], ["a"])


def test_uniform_baseline_on_unary_alphabet_is_zero():
    # every decoded string is a run of a's, all of which sit in the eval set
    vocab = TokenVocabulary(["a", EOW], [], 1)
    tree = build_bk_tree(["", "a", "aa", "aaa"])
    mean, std = uniform_baseline(vocab, M=3, count=50, seed=0, tree=tree)
    assert mean == 0.0
    assert std == 0.0


def test_uniform_baseline_deterministic():
    vocab = TokenVocabulary(["a", "b", "c", EOW], [], 3)
    tree = build_bk_tree(["ab", "ca"])
    r1 = uniform_baseline(vocab, M=4, count=200, seed=9, tree=tree)
    r2 = uniform_baseline(vocab, M=4, count=200, seed=9, tree=tree)
    assert r1 == r2
    with pytest.raises(ValueError):
        uniform_baseline(vocab, M=4, count=1, seed=0, tree=tree)


def test_evaluate_generated_report_fields():
    vocab = TokenVocabulary(["a", "b", "c", "d", EOW], [], 4)
    generated = ["abc", "dddd"]
    eval_set = ["abc", "abd", "ca"]
    report = evaluate_generated(generated, eval_set, vocab, M=4, seed=17,
                                baseline_count=100)
    assert report.generated_count == 2
    assert report.eval_count == 3
    assert report.overlap == 0.5
    assert report.med_values == [0, 3]  # dddd vs abd needs 3 edits
    assert report.med_mean == pytest.approx(1.5)
    assert report.med_std == pytest.approx(np.std([0, 3], ddof=1))
    assert report.baseline_count == 100
    assert report.baseline_mean > 0.0


def test_report_serialization(tmp_path):
    vocab = TokenVocabulary(["a", "b", EOW], [], 2)
    generated = ["ab", "ba"]
    report = evaluate_generated(generated, ["ab", "aa"], vocab, M=3, seed=1,
                                baseline_count=50)
    json_path = tmp_path / "report.json"
    save_report_json(report, str(json_path))
    payload = json.loads(json_path.read_text())
    assert payload["overlap"] == report.overlap
    assert payload["med_mean"] == report.med_mean
    assert payload["baseline_std"] == report.baseline_std

    csv_path = tmp_path / "report.csv"
    save_report_csv(report, generated, str(csv_path))
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "password,med"
    assert lines[1] == '"ab",0'
    assert len(lines) == 3

"""Similarity of generated passwords to a held-out evaluation set.

Two metrics: the fraction of generated passwords that appear verbatim in the
eval multiset, and the minimum Levenshtein distance (MED) from each generated
password to the eval set, answered exactly by a BK-tree with
triangle-inequality pruning. A uniform-token sampler provides the baseline
MED statistics.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .tokenizer import TokenVocabulary, detokenize


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance by the classic two-row dynamic program."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, 1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
        prev = cur
    return prev[-1]


def _encode_strings(strings: list[str]) -> tuple[np.ndarray, np.ndarray]:
    """Pack strings into a padded code-point matrix plus a length vector."""
    lengths = np.array([len(s) for s in strings], dtype=np.int32)
    width = max(1, int(lengths.max()) if len(lengths) else 1)
    mat = np.full((len(strings), width), -1, dtype=np.int32)
    for r, s in enumerate(strings):
        if s:
            mat[r, :len(s)] = [ord(ch) for ch in s]
    return mat, lengths


def _distances_to_many(query: str, mat: np.ndarray, lengths: np.ndarray,
                       rows: np.ndarray | None = None) -> np.ndarray:
    """Levenshtein distances from query to several packed strings at once.

    Row-by-row DP over the query characters, vectorized across candidate
    strings and positions. The in-row dependency (deletions) is resolved with
    a running minimum: dp[j] = j + cummin(t[j'] - j') for the tentative row t.
    """
    if rows is not None:
        mat = mat[rows]
        lengths = lengths[rows]
    count, width = mat.shape
    js = np.arange(width + 1, dtype=np.int32)
    prev = np.broadcast_to(js, (count, width + 1)).copy()
    for ch in query:
        tent = np.empty_like(prev)
        tent[:, 0] = prev[:, 0] + 1
        sub = prev[:, :-1] + (mat != ord(ch))
        tent[:, 1:] = np.minimum(prev[:, 1:] + 1, sub)
        prev = js + np.minimum.accumulate(tent - js, axis=1)
    return np.take_along_axis(prev, lengths[:, None].astype(np.int64), 1)[:, 0]


@dataclass
class BkTree:
    """Metric tree over distinct strings, children keyed by edge distance."""

    strings: list[str]
    children: list[dict[int, int]]
    _mat: np.ndarray
    _lengths: np.ndarray

    def __len__(self) -> int:
        return len(self.strings)


def build_bk_tree(passwords) -> BkTree:
    """Index the distinct passwords, inserted in sorted order."""
    distinct = sorted(set(passwords))
    if not distinct:
        raise ValueError("cannot build a tree over an empty password set")
    strings = [distinct[0]]
    children: list[dict[int, int]] = [{}]
    for s in distinct[1:]:
        node = 0
        while True:
            d = edit_distance(s, strings[node])
            # distinct strings: d >= 1 always holds here
            child = children[node].get(d)
            if child is None:
                strings.append(s)
                children.append({})
                children[node][d] = len(strings) - 1
                break
            node = child
    mat, lengths = _encode_strings(strings)
    return BkTree(strings, children, mat, lengths)


def min_edit_distance(tree: BkTree, query: str) -> int:
    """Exact minimum distance from query to the indexed set.

    Level-synchronous traversal: each frontier's node distances are computed
    in one vectorized batch, then children survive only if their edge weight
    lies within the current best (triangle-inequality pruning). The running
    best only shrinks, so pruning never discards a closer string.
    """
    best = np.iinfo(np.int32).max
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        dists = _distances_to_many(query, tree._mat, tree._lengths, frontier)
        best = min(best, int(dists.min()))
        if best == 0:
            return 0
        nxt: list[int] = []
        for node, d in zip(frontier, dists):
            for weight, child in tree.children[node].items():
                if abs(int(d) - weight) <= best:
                    nxt.append(child)
        frontier = np.array(nxt, dtype=np.int64)
    return best


def overlap_score(generated: list[str], eval_passwords) -> float:
    """Fraction of generated passwords present in the eval set."""
    if not generated:
        raise ValueError("no generated passwords to score")
    members = set(eval_passwords)
    return sum(pw in members for pw in generated) / len(generated)


def uniform_baseline(vocab: TokenVocabulary, M: int, count: int, seed: int,
                     tree: BkTree) -> tuple[float, float]:
    """Mean and sample std of MED for passwords of M uniform random tokens.

    Tokens are drawn uniformly over the whole vocabulary (end-of-word
    included) and the sequence is truncated at the first end-of-word.
    """
    if count < 2:
        raise ValueError("need count >= 2 for a sample standard deviation")
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, len(vocab), size=(count, M))
    meds = np.empty(count)
    for r in range(count):
        seq = []
        for t in draws[r]:
            if int(t) == vocab.eow_index:
                break
            seq.append(int(t))
        meds[r] = min_edit_distance(tree, detokenize(vocab, seq))
    return float(meds.mean()), float(meds.std(ddof=1))


@dataclass
class EvalReport:
    generated_count: int
    eval_count: int
    overlap: float
    med_values: list[int]
    med_mean: float
    med_std: float
    baseline_mean: float
    baseline_std: float
    baseline_count: int


def evaluate_generated(generated: list[str], eval_passwords: list[str],
                       vocab: TokenVocabulary, M: int, seed: int,
                       baseline_count: int = 1000) -> EvalReport:
    """Score generated passwords against an eval set, with a uniform baseline."""
    tree = build_bk_tree(eval_passwords)
    meds = [min_edit_distance(tree, pw) for pw in generated]
    base_mean, base_std = uniform_baseline(vocab, M, baseline_count, seed, tree)
    meds_arr = np.array(meds, dtype=np.float64)
    return EvalReport(
        generated_count=len(generated),
        eval_count=len(eval_passwords),
        overlap=overlap_score(generated, eval_passwords),
        med_values=meds,
        med_mean=float(meds_arr.mean()),
        med_std=float(meds_arr.std(ddof=1)) if len(meds) > 1 else 0.0,
        baseline_mean=base_mean,
        baseline_std=base_std,
        baseline_count=baseline_count,
    )


def save_report_json(report: EvalReport, path: str) -> None:
    payload = {
        "generated_count": report.generated_count,
        "eval_count": report.eval_count,
        "overlap": report.overlap,
        "med_mean": report.med_mean,
        "med_std": report.med_std,
        "baseline_mean": report.baseline_mean,
        "baseline_std": report.baseline_std,
        "baseline_count": report.baseline_count,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def save_report_csv(report: EvalReport, generated: list[str], path: str) -> None:
    """Per-password MED table; passwords are JSON-quoted to keep the CSV parseable."""
    if len(generated) != len(report.med_values):
        raise ValueError("generated list does not match the report")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("password,med\n")
        for pw, med in zip(generated, report.med_values):
            fh.write(f"{json.dumps(pw)},{med}\n")

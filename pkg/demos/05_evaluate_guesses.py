"""Train on one fold split and score generated passwords against the held-out
data.

Two metrics:
  overlap  fraction of generated passwords found verbatim in the eval fold
  MED      edit distance from each generated password to its nearest
           eval-fold neighbour, found exactly with a BK-tree

The reference point is a uniform sampler over token sequences with the same
vocabulary and budget; a trained model should land its guesses more than a
standard deviation closer to the data than that baseline.

Run:  python demos/05_evaluate_guesses.py   (about a minute)
"""
from __future__ import annotations

import os

import numpy as np

from passqubo import (
    PasswordCorpus,
    TrainConfig,
    decode_password,
    detokenize,
    encode_password,
    evaluate_generated,
    filter_by_token_length,
    gibbs_sample,
    make_scheme,
    make_splits,
    save_report_csv,
    save_report_json,
    tokenize,
    train,
    train_bpe,
)

WORDS = ["love", "angel", "dragon", "monkey", "shadow", "master", "summer",
         "winter", "flower", "silver", "golden", "purple", "tiger", "sunny",
         "happy", "lucky", "star", "moon", "rock", "king"]
SUFFIXES = ["", "1", "12", "123", "2020", "22", "7", "99", "00", "11"]
OUT_DIR = os.path.join(os.path.dirname(__file__), "output")


def build_corpus(count: int = 2000, seed: int = 99) -> PasswordCorpus:
    """Word-plus-suffix passwords with heavy-tailed popularity."""
    rng = np.random.default_rng(seed)
    w_word = rng.permutation(np.arange(1, 21, dtype=float) ** -0.8)
    w_word /= w_word.sum()
    w_suf = np.arange(1, 11, dtype=float) ** -1.0
    w_suf /= w_suf.sum()
    wi = rng.choice(len(WORDS), size=count, p=w_word)
    si = rng.choice(len(SUFFIXES), size=count, p=w_suf)
    return PasswordCorpus([WORDS[a] + SUFFIXES[b] for a, b in zip(wi, si)],
                          1, 32)


def main() -> None:
    corpus = build_corpus()
    vocab = train_bpe(corpus, 32)
    M = 4
    kept = filter_by_token_length(corpus, vocab, M)
    plan = make_splits(kept, folds=5, seed=3)
    train_pw = [kept.passwords[i] for i in plan.train_indices(0)]
    eval_pw = [kept.passwords[i] for i in plan.eval_indices(0)]
    print(f"{len(kept)} usable passwords, fold 0 holds out {len(eval_pw)}")

    scheme = make_scheme("binary8", 32)  # 5 bits per token, n = 20
    bits = np.stack([
        encode_password(scheme, tokenize(vocab, pw), M, vocab.eow_index)
        for pw in train_pw])
    model, _ = train(bits, scheme, M,
                     TrainConfig(iterations=300, samples_per_iter=4000,
                                 seed=11))

    batch = gibbs_sample(model, 500, seed=5)
    rng = np.random.default_rng(55)
    generated = [detokenize(vocab, decode_password(scheme, row, rng,
                                                   vocab.eow_index))
                 for row in batch.vectors]
    print("sample guesses:", sorted(set(generated))[:8])

    report = evaluate_generated(generated, eval_pw, vocab, M, seed=17,
                                baseline_count=500)
    print(f"\noverlap with eval fold: {report.overlap:.3f}")
    print(f"model MED    {report.med_mean:.2f} +- {report.med_std:.2f}")
    print(f"uniform MED  {report.baseline_mean:.2f} +- {report.baseline_std:.2f}")
    margin = report.baseline_mean - report.baseline_std - report.med_mean
    verdict = "beats" if margin > 0 else "does not beat"
    print(f"model {verdict} the baseline by more than one standard deviation")

    os.makedirs(OUT_DIR, exist_ok=True)
    json_path = os.path.join(OUT_DIR, "eval_report.json")
    csv_path = os.path.join(OUT_DIR, "eval_report.csv")
    save_report_json(report, json_path)
    save_report_csv(report, generated, csv_path)
    print(f"\nreport -> {json_path}")
    print(f"per-password distances -> {csv_path}")


if __name__ == "__main__":
    main()

"""Fit a QUBO-parametrized Boltzmann distribution to a password corpus.

The model assigns every n-bit vector z the probability exp(-z^T Q z) / Z.
Training descends the KL divergence from the data distribution with moment
matching: the gradient is the difference between data and model second
moments (the model side estimated from Gibbs samples) fed through ADAM.

At this desk scale (n = 12) the exact KL is computed by enumeration every
iteration, so the script can plot a true learning curve. A PNG is written
when matplotlib is importable, the raw CSV always.

Run:  python demos/03_train_model.py
"""
from __future__ import annotations

import os

import numpy as np

from passqubo import (
    TrainConfig,
    encode_password,
    filter_by_token_length,
    make_scheme,
    save_loss_csv,
    save_model,
    tokenize,
    train,
    train_bpe,
)

POOL = ["abab", "abcd", "cdcd", "efef", "gh", "abgh", "cdef"]
WEIGHTS = [60, 40, 30, 25, 20, 15, 10]
OUT_DIR = os.path.join(os.path.dirname(__file__), "output")


def main() -> None:
    rng = np.random.default_rng(42)
    w = np.asarray(WEIGHTS, dtype=float)
    picks = rng.choice(len(POOL), size=300, p=w / w.sum())
    from passqubo import PasswordCorpus

    corpus = PasswordCorpus([POOL[i] for i in picks], 1, 32)
    vocab = train_bpe(corpus, 16)

    M = 3
    scheme = make_scheme("binary8", 16)  # 4 bits per token, n = 12
    kept = filter_by_token_length(corpus, vocab, M)
    bits = np.stack([
        encode_password(scheme, tokenize(vocab, pw), M, vocab.eow_index)
        for pw in kept])
    print(f"training on {bits.shape[0]} passwords, n = {bits.shape[1]} bits")

    config = TrainConfig(iterations=400, samples_per_iter=2000,
                         step_size=0.02, seed=7)
    model, history = train(bits, scheme, M, config)

    os.makedirs(OUT_DIR, exist_ok=True)
    model_path = os.path.join(OUT_DIR, "desk_model.json")
    save_model(model, model_path)
    csv_path = os.path.join(OUT_DIR, "kl_curve.csv")
    save_loss_csv(history, csv_path)
    print(f"model -> {model_path}")
    print(f"loss history -> {csv_path}")

    kls = [record.kl for record in history]
    print(f"exact KL: {kls[0]:.3f} at iteration 1, {kls[-1]:.3f} at the end")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed, skipping the PNG")
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([r.iteration for r in history], kls)
    ax.set_xlabel("iteration")
    ax.set_ylabel("exact KL(data, model)")
    ax.set_yscale("log")
    ax.set_title("moment-matching training at desk scale")
    fig.tight_layout()
    png_path = os.path.join(OUT_DIR, "kl_curve.png")
    fig.savefig(png_path, dpi=120)
    print(f"learning curve -> {png_path}")


if __name__ == "__main__":
    main()

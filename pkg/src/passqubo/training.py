"""KL-divergence training of QUBO Boltzmann models.

The loss is KL(data || model) for the empirical distribution of encoded
passwords. Its gradient with respect to the upper-triangular parameter Q_ij
(i <= j) is the moment difference

    dKL/dQ_ij = E_data[z_i z_j] - E_model[z_i z_j],

a single count per unordered pair because z_i z_j appears exactly once in
z^T Q z when Q is upper-triangular. Model moments come from Gibbs samples;
data moments are computed once from the corpus. Standard ADAM descends this
gradient.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .boltzmann import MOMENT_LIMIT, QuboModel, exact_kl, gibbs_sample
from .encoding import EncodingScheme


@dataclass
class TrainConfig:
    iterations: int = 1000
    samples_per_iter: int = 10_000
    burn_in: int = 100
    thinning: int = 10
    step_size: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    init_penalty: float = 0.1
    seed: int = 0
    chains: int | None = None

    def __post_init__(self) -> None:
        if self.iterations < 1 or self.samples_per_iter < 1:
            raise ValueError("iterations and samples_per_iter must be >= 1")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ValueError("beta1 and beta2 must lie in [0, 1)")
        if self.step_size <= 0 or self.eps <= 0:
            raise ValueError("step_size and eps must be positive")


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> "AdamState":
        return cls(np.zeros((n, n)), np.zeros((n, n)))


@dataclass
class LossRecord:
    iteration: int
    grad_norm: float
    kl: float | None


def empirical_moments(vectors: np.ndarray) -> np.ndarray:
    """Second-moment matrix (1/m) sum_z z z^T of a batch of 0/1 row vectors."""
    vectors = np.asarray(vectors)
    if vectors.ndim != 2 or vectors.shape[0] == 0:
        raise ValueError("need a non-empty (m, n) array")
    if ((vectors != 0) & (vectors != 1)).any():
        raise ValueError("vectors must be 0/1")
    z = vectors.astype(np.float64)
    return z.T @ z / z.shape[0]


def kl_gradient_estimate(model_moments: np.ndarray,
                         data_moments: np.ndarray) -> np.ndarray:
    """Upper-triangular gradient of KL(data || model) from moment matrices."""
    model_moments = np.asarray(model_moments, dtype=np.float64)
    data_moments = np.asarray(data_moments, dtype=np.float64)
    if model_moments.shape != data_moments.shape or model_moments.ndim != 2:
        raise ValueError("moment matrices must share a square shape")
    return np.triu(data_moments - model_moments)


def adam_update(Q: np.ndarray, grad: np.ndarray, state: AdamState,
                config: TrainConfig, t: int) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected ADAM descent step on the upper-triangular entries."""
    if t < 1:
        raise ValueError("ADAM step counter starts at 1")
    grad = np.triu(np.asarray(grad, dtype=np.float64))
    m = config.beta1 * state.m + (1 - config.beta1) * grad
    v = config.beta2 * state.v + (1 - config.beta2) * grad**2
    m_hat = m / (1 - config.beta1**t)
    v_hat = v / (1 - config.beta2**t)
    Q_new = Q - config.step_size * m_hat / (np.sqrt(v_hat) + config.eps)
    return np.triu(Q_new), AdamState(m, v)


def init_qubo(scheme: EncodingScheme, M: int, penalty: float = 0.1) -> QuboModel:
    """Zero matrix plus a penalty on every pair inside the same one-hot block."""
    n = M * scheme.k
    Q = np.zeros((n, n))
    for pos in range(M):
        offset = pos * scheme.k
        for size in scheme.one_hot_blocks:
            for i in range(offset, offset + size):
                Q[i, i + 1:offset + size] = penalty
            offset += size
    return QuboModel(Q, scheme, M)


def _data_support(corpus_bits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rows, counts = np.unique(corpus_bits, axis=0, return_counts=True)
    return rows.astype(np.float64), counts / counts.sum()


def _iter_seed(seed: int, t: int) -> int:
    return int(np.random.SeedSequence([seed, t]).generate_state(1)[0])


def train(corpus_bits: np.ndarray, scheme: EncodingScheme, M: int,
          config: TrainConfig, checkpoint_path: str | None = None,
          resume: "Checkpoint | None" = None
          ) -> tuple[QuboModel, list[LossRecord]]:
    """Fit a QUBO to encoded passwords by sampled moment matching.

    Per iteration: Gibbs-sample the current model, estimate model moments,
    take the moment-difference gradient, apply ADAM. Data moments are cached
    once up front. The loss history records the gradient max-norm each
    iteration and, when n <= 20, the exact KL. Per-iteration sampler seeds
    derive deterministically from config.seed and the iteration number, so a
    resumed run reproduces an uninterrupted one.
    """
    corpus_bits = np.asarray(corpus_bits, dtype=np.uint8)
    n = M * scheme.k
    if corpus_bits.ndim != 2 or corpus_bits.shape[1] != n:
        raise ValueError(f"corpus bits must be (N, {n})")
    data_moments = empirical_moments(corpus_bits)
    track_kl = n <= MOMENT_LIMIT
    if track_kl:
        support, weights = _data_support(corpus_bits)

    if resume is not None:
        model, state, start = resume.model, resume.state, resume.iteration
        if model.n != n:
            raise ValueError("checkpoint does not match this corpus/scheme")
    else:
        model = init_qubo(scheme, M, config.init_penalty)
        state = AdamState.zeros(n)
        start = 0

    history: list[LossRecord] = []
    for t in range(start + 1, config.iterations + 1):
        batch = gibbs_sample(model, config.samples_per_iter, config.burn_in,
                             config.thinning, _iter_seed(config.seed, t),
                             config.chains)
        model_moments = empirical_moments(batch.vectors)
        grad = kl_gradient_estimate(model_moments, data_moments)
        Q_new, state = adam_update(model.Q, grad, state, config, t)
        model = QuboModel(Q_new, scheme, M)
        kl = exact_kl(model, support, weights) if track_kl else None
        history.append(LossRecord(t, float(np.abs(grad).max()), kl))
    if checkpoint_path is not None:
        save_checkpoint(Checkpoint(model, state, config, config.iterations),
                        checkpoint_path)
    return model, history


def save_loss_csv(history: list[LossRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("iteration,grad_norm,kl\n")
        for rec in history:
            kl = "" if rec.kl is None else repr(rec.kl)
            fh.write(f"{rec.iteration},{rec.grad_norm!r},{kl}\n")


@dataclass
class Checkpoint:
    model: QuboModel
    state: AdamState
    config: TrainConfig
    iteration: int


def save_checkpoint(ckpt: Checkpoint, path: str) -> None:
    payload = {
        "iteration": ckpt.iteration,
        "config": asdict(ckpt.config),
        "adam_m": [float(x) for x in ckpt.state.m.reshape(-1)],
        "adam_v": [float(x) for x in ckpt.state.v.reshape(-1)],
        "model": {
            "n": ckpt.model.n,
            "M": ckpt.model.M,
            "scheme": ckpt.model.scheme.to_json_dict() if ckpt.model.scheme else None,
            "Q": [float(x) for x in ckpt.model.Q.reshape(-1)],
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    mp = payload["model"]
    n = mp["n"]
    scheme = (EncodingScheme.from_json_dict(mp["scheme"]) if mp.get("scheme")
              else None)
    model = QuboModel(np.array(mp["Q"]).reshape(n, n), scheme, mp.get("M"))
    cfg_dict = payload["config"]
    config = TrainConfig(**cfg_dict)
    state = AdamState(np.array(payload["adam_m"]).reshape(n, n),
                      np.array(payload["adam_v"]).reshape(n, n))
    return Checkpoint(model, state, config, payload["iteration"])

"""QUBO-parametrized Boltzmann distributions over bit vectors.

A model is an upper-triangular matrix Q; a bit vector z has energy
E(z) = z^T Q z and probability proportional to exp(-E(z)). State integers
map to bit vectors little-endian: bit i of the integer is component i.

Gibbs sampling runs several independent chains in lockstep, vectorized
across chains; every retained vector sits at least burn_in sweeps plus a
positive multiple of the thinning stride into its own chain. One "sample"
is one full systematic sweep over all sites.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import expit, logsumexp

from .encoding import EncodingScheme

EXACT_LIMIT = 24       # exact enumeration allowed up to 2^24 states
MOMENT_LIMIT = 20      # exact moments / KL tracking limit
_CHUNK = 1 << 18
_DEFAULT_CHAINS = 1024


@dataclass
class QuboModel:
    Q: np.ndarray
    scheme: EncodingScheme | None = None
    M: int | None = None

    def __post_init__(self) -> None:
        self.Q = np.asarray(self.Q, dtype=np.float64)
        if self.Q.ndim != 2 or self.Q.shape[0] != self.Q.shape[1]:
            raise ValueError(f"Q must be square, got shape {self.Q.shape}")
        if not np.isfinite(self.Q).all():
            raise ValueError("Q contains non-finite entries")
        if np.tril(self.Q, -1).any():
            raise ValueError("Q must be upper-triangular")
        if (self.scheme is None) != (self.M is None):
            raise ValueError("scheme and M must be given together")
        if self.scheme is not None and self.n != self.M * self.scheme.k:
            raise ValueError(
                f"Q is {self.n}x{self.n} but M*k = {self.M * self.scheme.k}"
            )

    @property
    def n(self) -> int:
        return self.Q.shape[0]


@dataclass(frozen=True)
class SamplerConfig:
    burn_in: int
    thinning: int
    chain_count: int


@dataclass
class SampleBatch:
    vectors: np.ndarray  # (count, n) uint8
    seed: int
    sampler_config: SamplerConfig

    def __post_init__(self) -> None:
        self.vectors = np.asarray(self.vectors, dtype=np.uint8)
        if self.vectors.ndim != 2:
            raise ValueError("vectors must be a (count, n) array")
        if ((self.vectors != 0) & (self.vectors != 1)).any():
            raise ValueError("vectors must be 0/1")

    def __len__(self) -> int:
        return self.vectors.shape[0]


def energy(model: QuboModel, z: np.ndarray) -> float | np.ndarray:
    """E(z) = z^T Q z for one vector or a batch of row vectors."""
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] != model.n:
        raise ValueError(f"expected {model.n} components, got {z.shape[-1]}")
    e = np.einsum("...i,ij,...j->...", z, model.Q, z)
    return float(e) if z.ndim == 1 else e


def _state_block(n: int, start: int, stop: int) -> np.ndarray:
    ints = np.arange(start, stop, dtype=np.int64)
    return ((ints[:, None] >> np.arange(n)[None, :]) & 1).astype(np.float64)


def state_index(vectors: np.ndarray) -> np.ndarray:
    """Map 0/1 row vectors to their little-endian state integers."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    return vectors @ (1 << np.arange(vectors.shape[1], dtype=np.int64))


def _all_energies(model: QuboModel) -> np.ndarray:
    n = model.n
    total = 1 << n
    out = np.empty(total, dtype=np.float64)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        z = _state_block(n, start, stop)
        out[start:stop] = ((z @ model.Q) * z).sum(axis=1)
    return out


def exact_distribution(model: QuboModel) -> np.ndarray:
    """Probabilities of all 2^n states, indexed by the little-endian state integer."""
    if model.n > EXACT_LIMIT:
        raise ValueError(f"exact enumeration limited to n <= {EXACT_LIMIT}, got n={model.n}")
    neg_e = -_all_energies(model)
    neg_e -= neg_e.max()
    w = np.exp(neg_e)
    return w / w.sum()


def log_partition(model: QuboModel) -> float:
    if model.n > EXACT_LIMIT:
        raise ValueError(f"exact enumeration limited to n <= {EXACT_LIMIT}, got n={model.n}")
    return float(logsumexp(-_all_energies(model)))


def exact_moments(model: QuboModel) -> np.ndarray:
    """Exact second-moment matrix E[z z^T] under the model distribution."""
    if model.n > MOMENT_LIMIT:
        raise ValueError(f"exact moments limited to n <= {MOMENT_LIMIT}, got n={model.n}")
    p = exact_distribution(model)
    n = model.n
    moments = np.zeros((n, n))
    for start in range(0, 1 << n, _CHUNK):
        stop = min(start + _CHUNK, 1 << n)
        z = _state_block(n, start, stop)
        moments += (z * p[start:stop, None]).T @ z
    return moments


def exact_kl(model: QuboModel, support: np.ndarray, weights: np.ndarray) -> float:
    """KL(data || model) for a data distribution given as weighted support vectors.

    support holds distinct 0/1 rows; weights are their probabilities (sum 1).
    """
    support = np.asarray(support, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if support.ndim != 2 or support.shape[0] != weights.shape[0]:
        raise ValueError("support rows and weights must align")
    if not np.isclose(weights.sum(), 1.0):
        raise ValueError("weights must sum to 1")
    if (weights <= 0).any():
        raise ValueError("weights must be positive (drop zero-weight rows)")
    e = energy(model, support)
    return float(np.sum(weights * (np.log(weights) + e)) + log_partition(model))


def conditional_probability(model: QuboModel, z: np.ndarray, site: int) -> float:
    """P(z_site = 1 | all other components of z), in O(n)."""
    z = np.asarray(z, dtype=np.float64)
    n = model.n
    if z.shape != (n,):
        raise ValueError(f"expected vector of length {n}")
    if not (0 <= site < n):
        raise ValueError(f"site {site} outside [0, {n})")
    delta = (
        model.Q[site, site]
        + model.Q[:site, site] @ z[:site]
        + model.Q[site, site + 1:] @ z[site + 1:]
    )
    return float(expit(-delta))


def _chain_quotas(count: int, chains: int | None) -> np.ndarray:
    if chains is None:
        chains = min(count, _DEFAULT_CHAINS)
    if not (1 <= chains <= count):
        raise ValueError(f"chain count {chains} outside [1, {count}]")
    quotas = np.full(chains, count // chains, dtype=np.int64)
    quotas[: count % chains] += 1
    return quotas


def run_chains(n: int, count: int, burn_in: int, thinning: int, seed: int,
               chains: int | None, init, sweep) -> SampleBatch:
    """Shared chain scheduler for the Gibbs-style samplers.

    init(rng, chain_count) -> (chain_count, n) float array of start states;
    sweep(state, rng) updates the state array in place, one full pass over
    all sites. Chains advance in lockstep; chain c contributes its quota of
    vectors, one after each thinning stride past burn-in, and the batch is
    ordered by (stride round, chain index).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if burn_in < 0 or thinning < 1:
        raise ValueError("need burn_in >= 0 and thinning >= 1")
    quotas = _chain_quotas(count, chains)
    rng = np.random.default_rng(seed)
    state = init(rng, len(quotas))
    if state.shape != (len(quotas), n):
        raise ValueError("init returned wrong shape")
    for _ in range(burn_in):
        sweep(state, rng)
    out = np.empty((count, n), dtype=np.uint8)
    pos = 0
    for round_ in range(1, int(quotas.max()) + 1):
        for _ in range(thinning):
            sweep(state, rng)
        take = np.flatnonzero(quotas >= round_)
        out[pos:pos + len(take)] = state[take].astype(np.uint8)
        pos += len(take)
    config = SamplerConfig(burn_in, thinning, len(quotas))
    return SampleBatch(out, seed, config)


def gibbs_sample(model: QuboModel, count: int, burn_in: int = 100,
                 thinning: int = 10, seed: int = 0,
                 chains: int | None = None) -> SampleBatch:
    """Draw count vectors by systematic-sweep Gibbs sampling.

    Each sweep visits sites 0..n-1 in order and resamples each from its exact
    conditional given the current rest. The update is vectorized across
    independent chains started from uniform random vectors.
    """
    n = model.n
    # symmetrized couplings with zero diagonal: the field at site s felt from
    # the rest of z is Q_ss + sum_i S[i, s] z_i
    S = model.Q + model.Q.T
    np.fill_diagonal(S, 0.0)
    diag = np.diag(model.Q).copy()

    def init(rng: np.random.Generator, chain_count: int) -> np.ndarray:
        return rng.integers(0, 2, size=(chain_count, n)).astype(np.float64)

    def sweep(state: np.ndarray, rng: np.random.Generator) -> None:
        for s in range(n):
            delta = state @ S[:, s] + diag[s]
            p_one = expit(-delta)
            state[:, s] = rng.random(state.shape[0]) < p_one

    return run_chains(n, count, burn_in, thinning, seed, chains, init, sweep)


def write_bitstrings(vectors: np.ndarray, path: str) -> None:
    """One 0/1 string per row, one row per line."""
    vectors = np.asarray(vectors, dtype=np.uint8)
    with open(path, "w", encoding="utf-8") as fh:
        for row in vectors:
            fh.write("".join("1" if b else "0" for b in row))
            fh.write("\n")


def save_model(model: QuboModel, path: str) -> None:
    payload = {
        "n": model.n,
        "M": model.M,
        "scheme": model.scheme.to_json_dict() if model.scheme else None,
        "Q": [float(x) for x in model.Q.reshape(-1)],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_model(path: str) -> QuboModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    n = payload["n"]
    Q = np.array(payload["Q"], dtype=np.float64).reshape(n, n)
    scheme = (EncodingScheme.from_json_dict(payload["scheme"])
              if payload.get("scheme") else None)
    return QuboModel(Q, scheme, payload.get("M"))

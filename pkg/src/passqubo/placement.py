"""Geometric embedding of a QUBO as an atom layout, plus blockade sampling.

Learned couplings become edge probabilities via a softmax over unordered
vertex pairs; a repulsion-only force loop spreads atoms that sit closer than
the interaction distance, rejecting any candidate move that would leave the
device area. The force loop works in meters (the default step size 1e-10 is
calibrated for meter-scale coordinates and the 4e-6 m trigger); every
interface below speaks micrometers.

The allowed area is the fixed rectangle [-x/2, x/2] x [-y/2, y/2] around the
initial circle's center, which makes the pairwise extent constraints hold by
construction for accepted positions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .boltzmann import QuboModel, SampleBatch, run_chains

_UM = 1e-6  # meters per micrometer


@dataclass(frozen=True)
class DeviceConstraints:
    """Geometry limits in micrometers."""

    x_extent: float = 75.0
    y_extent: float = 76.0
    min_distance: float = 4.0
    y_gap: float = 4.0
    blockade_radius: float = 4.0

    def __post_init__(self) -> None:
        if min(self.x_extent, self.y_extent, self.min_distance,
               self.y_gap, self.blockade_radius) <= 0:
            raise ValueError("constraint lengths must be positive")


@dataclass
class ConstraintRecord:
    x_extent: float
    y_extent: float
    min_pair_distance: float
    x_ok: bool
    y_ok: bool
    distance_ok: bool
    y_rule_ok: bool
    distance_violations: list[tuple[int, int]]
    y_rule_violations: list[tuple[int, int]]

    @property
    def all_ok(self) -> bool:
        return self.x_ok and self.y_ok and self.distance_ok and self.y_rule_ok

    def to_json_dict(self) -> dict:
        return {
            "x_extent": self.x_extent,
            "y_extent": self.y_extent,
            "min_pair_distance": self.min_pair_distance,
            "x_ok": self.x_ok,
            "y_ok": self.y_ok,
            "distance_ok": self.distance_ok,
            "y_rule_ok": self.y_rule_ok,
            "distance_violations": [list(p) for p in self.distance_violations],
            "y_rule_violations": [list(p) for p in self.y_rule_violations],
            "all_ok": self.all_ok,
        }


@dataclass
class Placement:
    """Per-vertex (x, y) coordinates in micrometers."""

    coordinates: np.ndarray
    record: ConstraintRecord | None = None

    def __post_init__(self) -> None:
        self.coordinates = np.asarray(self.coordinates, dtype=np.float64)
        if self.coordinates.ndim != 2 or self.coordinates.shape[1] != 2:
            raise ValueError("coordinates must be an (n, 2) array")
        if not np.isfinite(self.coordinates).all():
            raise ValueError("coordinates must be finite")

    @property
    def n(self) -> int:
        return self.coordinates.shape[0]


def edge_probabilities(model: QuboModel) -> np.ndarray:
    """Softmax of -Q_ij/2 over unordered pairs i < j, as an upper-triangular matrix."""
    n = model.n
    if n < 2:
        raise ValueError("need at least two vertices for edge probabilities")
    iu = np.triu_indices(n, k=1)
    logits = -0.5 * model.Q[iu]
    logits -= logits.max()
    w = np.exp(logits)
    P = np.zeros((n, n))
    P[iu] = w / w.sum()
    return P


def _pairwise_distances(coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff**2).sum(-1)), diff


def _initial_circle(n: int, c: float) -> np.ndarray:
    v = np.arange(n)
    angle = -2.0 * np.pi * v / n
    return np.stack([np.cos(angle) / c, np.sin(angle) / c], axis=1)


def default_circle_scale(constraints: DeviceConstraints) -> float:
    """c such that the initial circle's diameter is 90% of the smaller extent."""
    return 2.0 / (0.9 * min(constraints.x_extent, constraints.y_extent) * _UM)


def force_placement(model: QuboModel, constraints: DeviceConstraints | None = None,
                    iterations: int = 100_000, step_size: float = 1e-10,
                    c: float | None = None, seed: int = 0) -> Placement:
    """Repulsion-only force layout of the model's variables as atoms.

    Starting from a circle of diameter 2/c, each iteration takes a snapshot
    of all positions, lets every pair closer than the interaction distance
    push apart with strength p(v,w) * (1 + |N(v)|) / d along their axis, and
    accepts each vertex's candidate only if it stays inside the area. Updates
    are synchronous. The procedure is deterministic; the seed only feeds a
    jitter fallback for exactly coincident atoms, where the push direction
    is undefined.
    """
    if constraints is None:
        constraints = DeviceConstraints()
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    n = model.n
    if c is None:
        c = default_circle_scale(constraints)
    if c <= 0:
        raise ValueError("c must be positive")
    P = edge_probabilities(model) if n >= 2 else np.zeros((n, n))
    P_sym = P + P.T
    pos = _initial_circle(n, c)
    half_x = constraints.x_extent * _UM / 2
    half_y = constraints.y_extent * _UM / 2
    trigger = constraints.min_distance * _UM
    rng = np.random.default_rng(seed)

    for _ in range(iterations):
        dist, diff = _pairwise_distances(pos)
        coincident = (dist == 0)
        np.fill_diagonal(coincident, False)
        if coincident.any():
            bump = rng.uniform(-0.5 * _UM, 0.5 * _UM, size=pos.shape)
            pos = pos + np.where(coincident.any(1)[:, None], bump, 0.0)
            dist, diff = _pairwise_distances(pos)
        active = (dist > 0) & (dist <= trigger)
        if not active.any():
            break  # forces vanished; positions are frozen from here on
        neighbor_counts = active.sum(axis=1)
        coef = np.where(active,
                        P_sym * (1 + neighbor_counts)[:, None]
                        / np.where(active, dist, 1.0)**2,
                        0.0)
        delta = (coef[:, :, None] * diff).sum(axis=1)
        candidate = pos + step_size * delta
        inside = ((np.abs(candidate[:, 0]) <= half_x)
                  & (np.abs(candidate[:, 1]) <= half_y))
        pos = np.where(inside[:, None], candidate, pos)

    placement = Placement(pos / _UM)
    placement.record = validate_constraints(placement, constraints)
    return placement


def pin_y_coordinates(placement: Placement, epsilon: float = 0.1) -> Placement:
    """Snap transitively epsilon-close y coordinates to their cluster mean."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    coords = placement.coordinates.copy()
    order = np.argsort(coords[:, 1], kind="stable")
    ys = coords[order, 1]
    cluster_start = 0
    for i in range(1, len(ys) + 1):
        if i == len(ys) or ys[i] - ys[i - 1] > epsilon:
            coords[order[cluster_start:i], 1] = ys[cluster_start:i].mean()
            cluster_start = i
    return Placement(coords)


def validate_constraints(placement: Placement,
                         constraints: DeviceConstraints | None = None) -> ConstraintRecord:
    """Check the area extents together with both pairwise rules (distance floor, y difference)."""
    if constraints is None:
        constraints = DeviceConstraints()
    coords = placement.coordinates
    n = placement.n
    x_extent = float(coords[:, 0].max() - coords[:, 0].min()) if n else 0.0
    y_extent = float(coords[:, 1].max() - coords[:, 1].min()) if n else 0.0
    dist, _ = _pairwise_distances(coords)
    iu = np.triu_indices(n, k=1)
    pair_d = dist[iu]
    min_pair = float(pair_d.min()) if pair_d.size else float("inf")
    bad_d = pair_d < constraints.min_distance
    dy = np.abs(coords[iu[0], 1] - coords[iu[1], 1])
    bad_y = (dy > 0) & (dy <= constraints.y_gap)
    return ConstraintRecord(
        x_extent=x_extent,
        y_extent=y_extent,
        min_pair_distance=min_pair,
        x_ok=x_extent <= constraints.x_extent,
        y_ok=y_extent <= constraints.y_extent,
        distance_ok=not bad_d.any(),
        y_rule_ok=not bad_y.any(),
        distance_violations=[(int(i), int(j)) for i, j
                             in zip(iu[0][bad_d], iu[1][bad_d])],
        y_rule_violations=[(int(i), int(j)) for i, j
                           in zip(iu[0][bad_y], iu[1][bad_y])],
    )


@dataclass
class BlockadeGraph:
    n: int
    edges: list[tuple[int, int]]

    def __post_init__(self) -> None:
        normalized = {(int(min(i, j)), int(max(i, j))) for i, j in self.edges}
        self.edges = sorted(normalized)
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) outside vertex range")

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            adj[i, j] = adj[j, i] = True
        return adj

    def neighbors(self) -> list[np.ndarray]:
        adj = self.adjacency()
        return [np.flatnonzero(adj[v]) for v in range(self.n)]


def blockade_graph(placement: Placement, radius: float = 4.0) -> BlockadeGraph:
    """Edge between every pair of distinct atoms within the blockade radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    dist, _ = _pairwise_distances(placement.coordinates)
    iu = np.triu_indices(placement.n, k=1)
    close = (dist[iu] > 0) & (dist[iu] <= radius)
    edges = [(int(i), int(j)) for i, j in zip(iu[0][close], iu[1][close])]
    return BlockadeGraph(placement.n, edges)


def sample_blockade_states(graph: BlockadeGraph, count: int, seed: int = 0,
                           lam: float = 2.0, burn_in: int = 100,
                           thinning: int = 10,
                           chains: int | None = None) -> SampleBatch:
    """Gibbs-sample independent sets of the graph with weight exp(lam * |x|).

    Chains start from the empty set and a site may switch on only when no
    neighbor is on, so every emitted vector is an independent set.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    n = graph.n
    nbrs = graph.neighbors()
    p_free = float(expit(lam))

    def init(rng: np.random.Generator, chain_count: int) -> np.ndarray:
        return np.zeros((chain_count, n))

    def sweep(state: np.ndarray, rng: np.random.Generator) -> None:
        for v in range(n):
            blocked = state[:, nbrs[v]].any(axis=1) if len(nbrs[v]) else \
                np.zeros(state.shape[0], dtype=bool)
            p_one = np.where(blocked, 0.0, p_free)
            state[:, v] = rng.random(state.shape[0]) < p_one

    return run_chains(n, count, burn_in, thinning, seed, chains, init, sweep)


def save_placement(placement: Placement, path: str) -> None:
    payload = {
        "coordinates_um": [[float(x), float(y)] for x, y in placement.coordinates],
        "record": placement.record.to_json_dict() if placement.record else None,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_placement(path: str) -> Placement:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    record = None
    if payload.get("record"):
        r = payload["record"]
        record = ConstraintRecord(
            x_extent=r["x_extent"], y_extent=r["y_extent"],
            min_pair_distance=r["min_pair_distance"],
            x_ok=r["x_ok"], y_ok=r["y_ok"], distance_ok=r["distance_ok"],
            y_rule_ok=r["y_rule_ok"],
            distance_violations=[tuple(p) for p in r["distance_violations"]],
            y_rule_violations=[tuple(p) for p in r["y_rule_violations"]],
        )
    return Placement(np.array(payload["coordinates_um"]), record)


def render_svg(placement: Placement, graph: BlockadeGraph | None = None,
               constraints: DeviceConstraints | None = None,
               title: str = "") -> str:
    """Draw the layout: area frame, blockade edges, atoms, violations in red.

    Pure string formatting, so identical inputs give identical bytes.
    """
    if constraints is None:
        constraints = DeviceConstraints()
    record = placement.record
    hx = constraints.x_extent / 2
    hy = constraints.y_extent / 2
    margin = 8.0
    # SVG y grows downward; flip sign on all y coordinates
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{-hx - margin:.3f} {-hy - margin:.3f} '
        f'{2 * (hx + margin):.3f} {2 * (hy + margin):.3f}" '
        f'font-family="sans-serif">',
        f'<rect x="{-hx - margin:.3f}" y="{-hy - margin:.3f}" '
        f'width="{2 * (hx + margin):.3f}" height="{2 * (hy + margin):.3f}" '
        f'fill="white"/>',
        f'<rect x="{-hx:.3f}" y="{-hy:.3f}" width="{2 * hx:.3f}" '
        f'height="{2 * hy:.3f}" fill="none" stroke="#888" stroke-width="0.3"/>',
    ]
    for tick in range(-30, 31, 10):
        if abs(tick) <= hx:
            parts.append(f'<text x="{tick:.1f}" y="{hy + 4:.3f}" font-size="3" '
                         f'fill="#555" text-anchor="middle">{tick}</text>')
        if abs(tick) <= hy:
            parts.append(f'<text x="{-hx - 1.5:.3f}" y="{-tick + 1:.1f}" font-size="3" '
                         f'fill="#555" text-anchor="end">{tick}</text>')
    coords = placement.coordinates
    if graph is not None:
        for i, j in graph.edges:
            parts.append(
                f'<line x1="{coords[i, 0]:.3f}" y1="{-coords[i, 1]:.3f}" '
                f'x2="{coords[j, 0]:.3f}" y2="{-coords[j, 1]:.3f}" '
                f'stroke="#7aa6c2" stroke-width="0.25"/>')
    bad_pairs = set()
    if record is not None:
        bad_pairs = set(record.distance_violations) | set(record.y_rule_violations)
        for i, j in sorted(bad_pairs):
            parts.append(
                f'<line x1="{coords[i, 0]:.3f}" y1="{-coords[i, 1]:.3f}" '
                f'x2="{coords[j, 0]:.3f}" y2="{-coords[j, 1]:.3f}" '
                f'stroke="#cc2222" stroke-width="0.45"/>')
    bad_atoms = {v for pair in bad_pairs for v in pair}
    for v, (x, y) in enumerate(coords):
        color = "#cc2222" if v in bad_atoms else "#1a4a7a"
        parts.append(f'<circle cx="{x:.3f}" cy="{-y:.3f}" r="1.1" fill="{color}"/>')
    caption = title
    if record is not None:
        status = "all constraints satisfied" if record.all_ok else \
            (f"{len(record.distance_violations)} distance / "
             f"{len(record.y_rule_violations)} y-rule violations")
        caption = f"{title}  {status}".strip()
    if caption:
        parts.append(f'<text x="{-hx:.3f}" y="{-hy - 3:.3f}" font-size="3.5" '
                     f'fill="#222">{caption}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

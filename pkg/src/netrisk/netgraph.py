"""Per-quarter exposure networks and shortest-path betweenness.

Edges point from reporter (creditor) to counterparty (debtor). Path lengths
are hop counts on the binary adjacency; claim amounts only decide whether
an edge exists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

import numpy as np

from netrisk.errors import GraphTooLarge, TooFewNodes, UnknownPeriod
from netrisk.ingest import Panel

Mode = Literal["directed", "undirected"]
MODES = ("directed", "undirected")

EXHAUSTIVE_MAX_NODES = 10


@dataclass(frozen=True, eq=False)
class ExposureNetwork:
    period: str
    countries: tuple[str, ...]
    weights: np.ndarray
    adjacency: np.ndarray
    threshold: float = 0.0

    @property
    def n(self) -> int:
        return len(self.countries)

    def edges(self) -> list[tuple[str, str, float]]:
        rows, cols = np.nonzero(self.adjacency)
        return [(self.countries[i], self.countries[j], float(self.weights[i, j])) for i, j in zip(rows, cols)]


@dataclass(frozen=True)
class CentralityVector:
    values: Mapping[str, float]
    mode: Mode = "undirected"
    normalized: bool = False

    def __getitem__(self, country: str) -> float:
        return self.values[country]

    def as_array(self, countries: Sequence[str]) -> np.ndarray:
        return np.array([self.values[c] for c in countries], dtype=float)


def network_from_weights(
    countries: Sequence[str], weights, period: str = "", threshold: float = 0.0
) -> ExposureNetwork:
    w = np.array(weights, dtype=float)
    n = len(countries)
    if w.shape != (n, n):
        raise ValueError(f"weights must be {n}x{n}, got {w.shape}")
    if (w < 0).any():
        raise ValueError("weights must be non-negative")
    np.fill_diagonal(w, 0.0)
    adj = (w > threshold).astype(np.int8)
    np.fill_diagonal(adj, 0)
    w.setflags(write=False)
    adj.setflags(write=False)
    return ExposureNetwork(period, tuple(countries), w, adj, float(threshold))


def network_from_adjacency(countries: Sequence[str], adjacency, period: str = "") -> ExposureNetwork:
    """Binary network with unit weights wherever ``adjacency`` is non-zero."""
    a = (np.asarray(adjacency) != 0).astype(float)
    return network_from_weights(countries, a, period)


def build_network(panel: Panel, period: str, threshold: float = 0.0) -> ExposureNetwork:
    if period not in panel.exposures:
        raise UnknownPeriod(f"unknown period {period!r}")
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    n = len(panel.countries)
    idx = {c: k for k, c in enumerate(panel.countries)}
    w = np.zeros((n, n))
    for r in panel.exposures[period]:
        w[idx[r.reporter], idx[r.counterparty]] = r.claim
    return network_from_weights(panel.countries, w, period, threshold)


def density(network: ExposureNetwork) -> float:
    n = network.n
    if n < 2:
        raise TooFewNodes(f"density needs at least 2 nodes, got {n}")
    return float(np.count_nonzero(network.adjacency)) / (n * (n - 1))


def _neighbours(network: ExposureNetwork, mode: Mode) -> list[list[int]]:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    adj = network.adjacency != 0
    if mode == "undirected":
        adj = adj | adj.T
    return [np.flatnonzero(row).tolist() for row in adj]


def _normalize(raw: np.ndarray, n: int) -> np.ndarray:
    if n <= 2:
        return np.zeros(n)
    return raw / ((n - 1) * (n - 2))


def betweenness(network: ExposureNetwork, mode: Mode = "undirected", normalized: bool = False) -> CentralityVector:
    """Brandes' dependency accumulation over unweighted BFS trees.

    Sums over ordered (s, t) pairs, so an undirected graph counts every
    unordered pair twice. Normalization divides by (N-1)(N-2).
    """
    nbrs = _neighbours(network, mode)
    n = network.n
    cb = np.zeros(n)
    for s in range(n):
        stack = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        sigma[s] = 1
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    if normalized:
        cb = _normalize(cb, n)
    return CentralityVector(dict(zip(network.countries, cb.tolist())), mode, normalized)


def _all_shortest_paths(nbrs: list[list[int]], s: int, t: int) -> list[list[int]]:
    # expand whole BFS layers of partial paths until one reaches t
    frontier = [[s]]
    visited = {s}
    while frontier:
        done = [p for p in frontier if p[-1] == t]
        if done:
            return done
        nxt = []
        layer = set()
        for path in frontier:
            for w in nbrs[path[-1]]:
                if w not in visited:
                    nxt.append(path + [w])
                    layer.add(w)
        visited |= layer
        frontier = nxt
    return []


def betweenness_exhaustive(network: ExposureNetwork, mode: Mode = "undirected", normalized: bool = False) -> CentralityVector:
    """Reference betweenness: list every shortest path of every ordered pair
    and count interior vertices. Exponential; capped at 10 nodes."""
    n = network.n
    if n > EXHAUSTIVE_MAX_NODES:
        raise GraphTooLarge(f"exhaustive betweenness limited to {EXHAUSTIVE_MAX_NODES} nodes, got {n}")
    nbrs = _neighbours(network, mode)
    g = np.zeros(n)
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            paths = _all_shortest_paths(nbrs, s, t)
            if not paths:
                continue
            for path in paths:
                for v in path[1:-1]:
                    g[v] += 1.0 / len(paths)
    if normalized:
        g = _normalize(g, n)
    return CentralityVector(dict(zip(network.countries, g.tolist())), mode, normalized)

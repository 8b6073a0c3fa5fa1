"""Positive-Feedback Preference (PFP) network growth.

Every growth step adds one node and up to three links through one of two
interactive-growth branches:

* with probability ``p`` the new node attaches to one *host*, and the host
  gains two internal links to *peers*;
* otherwise the new node attaches to two hosts, and the first host gains one
  internal link to a peer.

Hosts and peers are drawn with probability proportional to
``k ** (1 + delta * log10(k))``, the positive-feedback preference weight.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph


class ParameterError(ValueError):
    """Invalid growth-model parameters."""


class IsolatedNodeError(ValueError):
    """A degree-0 node was offered to the preference weight (log10(0))."""


class CandidatesExhaustedError(LookupError):
    """Every candidate node was excluded from a preferential draw."""


@dataclass(frozen=True)
class PfpParams:
    target_n: int
    rng_seed: int
    p: float = 0.4
    delta: float = 0.048
    seed_size: int = 5

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {self.p}")
        if not 0.0 <= self.delta <= 1.0:
            raise ParameterError(f"delta must lie in [0, 1], got {self.delta}")
        if self.seed_size < 3:
            raise ParameterError(f"seed_size must be >= 3, got {self.seed_size}")
        if self.target_n < self.seed_size:
            raise ParameterError(
                f"target_n ({self.target_n}) must be >= seed_size ({self.seed_size})")
        if not 0 <= self.rng_seed < 2**64:
            raise ParameterError("rng_seed must be an unsigned 64-bit integer")


def make_rng(rng_seed: int, run_index: int = 0) -> np.random.Generator:
    """Independent, reproducible stream for one ensemble member."""
    return np.random.default_rng(np.random.SeedSequence([rng_seed, run_index]))


def _pfp_weight(k: int, delta: float) -> float:
    return k ** (1.0 + delta * math.log10(k))


def preference_weights(degrees: Sequence[int], delta: float) -> np.ndarray:
    """Unnormalised positive-feedback preference for each degree.

    >>> preference_weights([2, 2, 4], 0.0).tolist()
    [2.0, 2.0, 4.0]
    """
    out = np.empty(len(degrees), dtype=np.float64)
    for i, k in enumerate(degrees):
        if k < 1:
            raise IsolatedNodeError(
                "preference weight is undefined for degree-0 nodes")
        out[i] = _pfp_weight(k, delta)
    return out


def _draw(weights: np.ndarray, rng: np.random.Generator) -> int:
    # cumulative-weight inversion; exactly one uniform draw per call
    cum = np.cumsum(weights)
    total = cum[-1] if len(cum) else 0.0
    if not total > 0.0:
        raise CandidatesExhaustedError("no candidate with positive weight")
    i = int(np.searchsorted(cum, rng.random() * total, side="right"))
    if i >= len(cum):
        # u * total rounded up to total
        i = int(np.flatnonzero(weights)[-1])
    return i


def pfp_select(g: Graph, delta: float, excluded: Iterable[int],
               rng: np.random.Generator) -> int:
    """Draw one node of ``g`` outside ``excluded`` by preference weight."""
    excluded = set(excluded)
    candidates = [v for v in g.nodes if v not in excluded]
    if not candidates:
        raise CandidatesExhaustedError("every node of the graph is excluded")
    degs = g.degrees
    weights = preference_weights([degs[v] for v in candidates], delta)
    return candidates[_draw(weights, rng)]


def _prufer_tree(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    # decoding a uniform Prüfer sequence gives a uniform labelled tree
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    remaining = [1] * n
    for x in seq:
        remaining[x] += 1
    leaves = [v for v in range(n) if remaining[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        remaining[x] -= 1
        if remaining[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _seed_adjacency(seed_size: int, rng: np.random.Generator) -> list[set[int]]:
    if seed_size < 3:
        raise ParameterError(f"seed_size must be >= 3, got {seed_size}")
    adj: list[set[int]] = [set() for _ in range(seed_size)]
    for u, v in _prufer_tree(seed_size, rng):
        adj[u].add(v)
        adj[v].add(u)
    for u in range(seed_size):
        for v in range(u + 1, seed_size):
            if v not in adj[u] and rng.random() < 0.5:
                adj[u].add(v)
                adj[v].add(u)
    return adj


def seed_graph(seed_size: int, rng: np.random.Generator) -> Graph:
    """Small connected random graph: random spanning tree plus coin-flip edges."""
    adj = _seed_adjacency(seed_size, rng)
    return Graph({v: nbrs for v, nbrs in enumerate(adj)})


class _Growth:
    """Mutable state of one growing network; node ids are birth indices."""

    def __init__(self, params: PfpParams, rng: np.random.Generator):
        self.delta = params.delta
        self.rng = rng
        self.adj: list[set[int]] = [set() for _ in range(params.target_n)]
        self.weights = np.zeros(params.target_n, dtype=np.float64)
        for v, nbrs in enumerate(_seed_adjacency(params.seed_size, rng)):
            self.adj[v] = nbrs
        for v in range(params.seed_size):
            self.weights[v] = _pfp_weight(len(self.adj[v]), self.delta)

    def link(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.weights[u] = _pfp_weight(len(self.adj[u]), self.delta)
        self.weights[v] = _pfp_weight(len(self.adj[v]), self.delta)

    def select(self, n_old: int, excluded: Iterable[int]) -> int:
        w = self.weights[:n_old].copy()
        idx = [v for v in excluded if v < n_old]
        if idx:
            w[idx] = 0.0
        return _draw(w, self.rng)

    def add_internal_link(self, host: int, n_old: int) -> None:
        # peers exclude the host and its current neighbours; skipped if none left
        try:
            peer = self.select(n_old, self.adj[host] | {host})
        except CandidatesExhaustedError:
            return
        self.link(host, peer)

    def step(self, new: int, p: float) -> None:
        # nodes 0..new-1 are old; the new node is never a candidate
        if self.rng.random() < p:
            host = self.select(new, ())
            self.link(new, host)
            self.add_internal_link(host, new)
            self.add_internal_link(host, new)
        else:
            h1 = self.select(new, ())
            h2 = self.select(new, (h1,))
            self.link(new, h1)
            self.link(new, h2)
            self.add_internal_link(h1, new)

    def graph(self) -> Graph:
        return Graph({v: nbrs for v, nbrs in enumerate(self.adj)})


def grow(params: PfpParams, rng: np.random.Generator | None = None) -> Graph:
    """Grow one PFP network of ``params.target_n`` nodes.

    Without an explicit ``rng`` the run-0 stream of ``params.rng_seed`` is used.
    """
    if rng is None:
        rng = make_rng(params.rng_seed, 0)
    state = _Growth(params, rng)
    for new in range(params.seed_size, params.target_n):
        state.step(new, params.p)
    return state.graph()


def _grow_run(args: tuple[PfpParams, int]) -> Graph:
    params, run = args
    return grow(params, make_rng(params.rng_seed, run))


def grow_ensemble(params: PfpParams, runs: int, workers: int = 1) -> list[Graph]:
    """``runs`` independent networks; run ``i`` uses stream ``(rng_seed, i)``.

    The result does not depend on ``workers``.
    """
    if runs < 1:
        raise ParameterError(f"runs must be >= 1, got {runs}")
    jobs = [(params, i) for i in range(runs)]
    if workers <= 1 or runs == 1:
        return [_grow_run(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, runs)) as pool:
        return list(pool.map(_grow_run, jobs))

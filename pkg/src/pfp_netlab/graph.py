"""Immutable undirected simple graphs over non-negative integer node ids."""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy import sparse


class GraphError(ValueError):
    """Raised when graph data violates the simple-graph invariants."""


class NodeNotFoundError(KeyError):
    """Raised when a node id is not part of the graph."""


class Graph:
    """Undirected simple graph with sorted adjacency.

    Instances are never mutated after construction, so they can be shared
    freely between workers.  Use :func:`from_edge_list` to build one from raw
    peering pairs; the constructor itself expects an already symmetric,
    loop-free adjacency mapping and validates it.
    """

    __slots__ = ("_adj", "_nodes", "_edge_count", "__dict__")

    def __init__(self, adjacency: Mapping[int, Iterable[int]]):
        adj: dict[int, tuple[int, ...]] = {}
        for v in sorted(adjacency):
            if v < 0:
                raise GraphError(f"negative node id {v}")
            nbrs = tuple(sorted(set(adjacency[v])))
            if v in nbrs:
                raise GraphError(f"self-loop on node {v}")
            adj[v] = nbrs
        total = 0
        for v, nbrs in adj.items():
            for u in nbrs:
                if u not in adj or not _contains(adj[u], v):
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
            total += len(nbrs)
        self._adj = adj
        self._nodes = tuple(adj)
        self._edge_count = total // 2

    # -- basic queries -------------------------------------------------

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self._adj.items()))

    def __repr__(self) -> str:
        return f"Graph(N={len(self)}, L={self.edge_count})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise NodeNotFoundError(v) from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @cached_property
    def degrees(self) -> dict[int, int]:
        """Node id -> degree, in ascending node order."""
        return {v: len(nbrs) for v, nbrs in self._adj.items()}

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self._adj.get(u)
        return nbrs is not None and _contains(nbrs, v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    yield u, v

    def adjacency(self) -> Mapping[int, tuple[int, ...]]:
        return dict(self._adj)

    def subgraph(self, nodes: Iterable[int]) -> Graph:
        keep = set(nodes)
        missing = keep.difference(self._adj)
        if missing:
            raise NodeNotFoundError(min(missing))
        return Graph({v: [u for u in self._adj[v] if u in keep] for v in keep})

    # -- array views for the vectorised metrics ------------------------

    @cached_property
    def index(self) -> dict[int, int]:
        """Node id -> position in :attr:`nodes`."""
        return {v: i for i, v in enumerate(self._nodes)}

    @cached_property
    def csr(self) -> sparse.csr_matrix:
        """Unweighted adjacency matrix in node order."""
        n = len(self._nodes)
        idx = self.index
        indptr = np.zeros(n + 1, dtype=np.int64)
        indices = np.empty(2 * self._edge_count, dtype=np.int32)
        pos = 0
        for i, v in enumerate(self._nodes):
            nbrs = self._adj[v]
            indices[pos:pos + len(nbrs)] = [idx[u] for u in nbrs]
            pos += len(nbrs)
            indptr[i + 1] = pos
        data = np.ones(len(indices), dtype=np.int8)
        return sparse.csr_matrix((data, indices, indptr), shape=(n, n))


def _contains(seq: tuple[int, ...], x: int) -> bool:
    i = bisect_left(seq, x)
    return i < len(seq) and seq[i] == x


def from_edge_list(edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph from endpoint pairs.

    Duplicate and reversed pairs collapse to one edge and self-loops are
    dropped; an endpoint that only appears in a self-loop is still kept as a
    node.
    """
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        u, v = int(u), int(v)
        if u < 0 or v < 0:
            raise GraphError(f"negative node id in edge ({u}, {v})")
        adj.setdefault(u, set())
        adj.setdefault(v, set())
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return Graph(adj)


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted node lists, ordered by first node id."""
    seen: set[int] = set()
    comps = []
    for s in g.nodes:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(g) == 0 or len(connected_components(g)) == 1


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component.

    Ties go to the component holding the smallest node id.
    """
    comps = connected_components(g)
    if len(comps) <= 1:
        return g
    # components come out ordered by their minimum id, so max() keeps the first
    best = max(comps, key=len)
    return g.subgraph(best)

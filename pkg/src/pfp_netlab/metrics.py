"""Topology statistics for AS-level graphs and their model counterparts.

Every function here is a pure function of an immutable :class:`Graph`.
Undefined quantities raise :class:`UndefinedMetricError` carrying a short
reason code; :func:`full_report` turns those into absent report fields.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numba
import numpy as np

from .graph import Graph, is_connected, largest_connected_component

KINDS = ("pdf", "ccd", "by_degree", "by_rank")

REPORT_FIELDS = (
    "n", "l", "k_max", "gamma", "alpha", "n_clique",
    "theta", "mean_triangle", "ell_star", "c_max",
)


class UndefinedMetricError(ValueError):
    """A statistic has no value for this graph (e.g. alpha of a regular graph)."""

    def __init__(self, reason: str, message: str | None = None):
        super().__init__(message or reason)
        self.reason = reason


@dataclass(frozen=True)
class DistributionTable:
    """Numeric (x, y) series sorted by strictly increasing x."""

    points: tuple[tuple[float, float], ...]
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        xs = [x for x, _ in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("x values must be strictly increasing")
        if self.kind == "ccd":
            ys = [y for _, y in self.points]
            if any(not 0.0 <= y <= 1.0 for y in ys):
                raise ValueError("ccd values must lie in [0, 1]")
            if any(b > a for a, b in zip(ys, ys[1:])):
                raise ValueError("ccd values must be non-increasing")

    @classmethod
    def from_xy(cls, xs: Sequence[float], ys: Sequence[float], kind: str):
        return cls(tuple(zip(xs, ys)), kind)

    @property
    def xs(self) -> np.ndarray:
        return np.array([x for x, _ in self.points], dtype=np.float64)

    @property
    def ys(self) -> np.ndarray:
        return np.array([y for _, y in self.points], dtype=np.float64)

    def as_dict(self) -> dict[float, float]:
        return dict(self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class MetricsReport:
    """One column of the comparison table.

    A field set to ``None`` is absent; ``reasons`` then says why.  Path
    statistics of a disconnected graph come from its largest component and
    ``disconnected`` is set.
    """

    n: float | None = None
    l: float | None = None
    k_max: float | None = None
    gamma: float | None = None
    alpha: float | None = None
    n_clique: float | None = None
    theta: float | None = None
    mean_triangle: float | None = None
    ell_star: float | None = None
    c_max: float | None = None
    reasons: dict[str, str] = field(default_factory=dict)
    disconnected: bool = False

    def values(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in REPORT_FIELDS}

    def defined(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.values().items() if v is not None)


# -- degree statistics ----------------------------------------------------

def _require_nodes(g: Graph) -> None:
    if len(g) == 0:
        raise UndefinedMetricError("empty", "graph has no nodes")


def degree_distribution(g: Graph) -> tuple[DistributionTable, DistributionTable]:
    """Degree pdf P(k) and its complementary cumulative form P(>= k)."""
    _require_nodes(g)
    n = len(g)
    counts = sorted(Counter(g.degrees.values()).items())
    pdf = DistributionTable.from_xy([k for k, _ in counts], [c / n for _, c in counts], "pdf")
    return pdf, _value_ccd(list(g.degrees.values()))


def fit_loglog_slope(table: DistributionTable, x_min: float, x_max: float) -> float:
    """Least-squares slope of log10(y) against log10(x) over x in [x_min, x_max].

    Points with non-positive x or y are ignored.
    """
    xs, ys = table.xs, table.ys
    keep = (xs >= x_min) & (xs <= x_max) & (xs > 0) & (ys > 0)
    if keep.sum() < 2:
        raise UndefinedMetricError("unfittable", "fewer than two usable points")
    lx, ly = np.log10(xs[keep]), np.log10(ys[keep])
    dx = lx - lx.mean()
    return float(np.dot(dx, ly - ly.mean()) / np.dot(dx, dx))


def degree_exponent_from_ccd(ccd: DistributionTable) -> float:
    """Power-law exponent of the pdf implied by a degree CCD (slope - 1)."""
    if len(ccd) < 3:
        raise UndefinedMetricError("unfittable", "fewer than three distinct degrees")
    return fit_loglog_slope(ccd, 1, ccd.points[-1][0]) - 1.0


def degree_exponent(g: Graph) -> float:
    _, ccd = degree_distribution(g)
    return degree_exponent_from_ccd(ccd)


# -- degree correlation ---------------------------------------------------

def knn_by_degree(g: Graph) -> DistributionTable:
    """Mean nearest-neighbour degree of k-degree nodes."""
    _require_nodes(g)
    degs = g.degrees
    acc: dict[int, list[float]] = defaultdict(list)
    for v, k in degs.items():
        if k == 0:
            raise UndefinedMetricError("isolated_node", f"node {v} has no neighbours")
        acc[k].append(sum(degs[u] for u in g.neighbors(v)) / k)
    ks = sorted(acc)
    return DistributionTable.from_xy(ks, [math.fsum(acc[k]) / len(acc[k]) for k in ks],
                                     "by_degree")


def assortative_coefficient(g: Graph) -> float:
    """Degree-degree correlation over links.

    Evaluated with exact integer sums; every factor of 1/L and 1/2 cancels
    between numerator and denominator.
    """
    L = g.edge_count
    if L == 0:
        raise UndefinedMetricError("no_links")
    degs = g.degrees
    s_prod = s_sum = s_sq = 0
    for u, v in g.edges():
        j, k = degs[u], degs[v]
        s_prod += j * k
        s_sum += j + k
        s_sq += j * j + k * k
    num = 4 * L * s_prod - s_sum * s_sum
    den = 2 * L * s_sq - s_sum * s_sum
    if den == 0:
        raise UndefinedMetricError("regular", "all link endpoints share one degree")
    return num / den


# -- rich club --------------------------------------------------------------

def rank_order(g: Graph) -> list[int]:
    """Nodes by non-increasing degree; equal degrees by ascending id."""
    degs = g.degrees
    return sorted(g.nodes, key=lambda v: (-degs[v], v))


def rich_club_by_degree(g: Graph) -> DistributionTable:
    """phi(k) over the club of nodes with degree >= k."""
    degs = g.degrees
    node_counts = Counter(degs.values())
    edge_counts = Counter(min(degs[u], degs[v]) for u, v in g.edges())
    xs, ys = [], []
    n_k = e_k = 0
    for k in sorted(node_counts, reverse=True):
        n_k += node_counts[k]
        # a link is inside the club iff its lower endpoint degree is >= k
        e_k += edge_counts.get(k, 0)
        if n_k >= 2:
            xs.append(k)
            ys.append(2 * e_k / (n_k * (n_k - 1)))
    return DistributionTable.from_xy(xs[::-1], ys[::-1], "by_degree")


def _club_edge_counts(g: Graph, order: list[int]) -> np.ndarray:
    # entry r-1: links among the top-r nodes
    pos = {v: i for i, v in enumerate(order)}
    last = np.zeros(len(order), dtype=np.int64)
    for u, v in g.edges():
        last[max(pos[u], pos[v])] += 1
    return np.cumsum(last)


def rich_club_by_rank(g: Graph) -> DistributionTable:
    """phi(r) of the r best-connected nodes against normalised rank r/N."""
    n = len(g)
    if n < 2:
        return DistributionTable((), "by_rank")
    edges_in = _club_edge_counts(g, rank_order(g))
    r = np.arange(2, n + 1)
    phi = 2 * edges_in[1:] / (r * (r - 1))
    return DistributionTable.from_xy((r / n).tolist(), phi.tolist(), "by_rank")


def rich_club_exponent(g: Graph) -> float:
    """Slope of log phi(r/N) against log(r/N), leaving out the leading clique."""
    table = rich_club_by_rank(g)
    start = next((x for x, y in table.points if y < 1.0), None)
    if start is None:
        raise UndefinedMetricError("clique", "every rank prefix is a clique")
    return fit_loglog_slope(table, start, 1.0)


def top_clique_size(g: Graph) -> int:
    """Largest n such that the n highest-ranked nodes are pairwise adjacent."""
    _require_nodes(g)
    order = rank_order(g)
    size = 1
    while size < len(order):
        v = order[size]
        if not all(g.has_edge(v, u) for u in order[:size]):
            break
        size += 1
    return size


# -- triangles ------------------------------------------------------------

def triangle_coefficients(g: Graph) -> dict[int, int]:
    """Number of triangles through each node (links among its neighbours)."""
    nbr_sets = {v: frozenset(g.neighbors(v)) for v in g.nodes}
    twice = dict.fromkeys(g.nodes, 0)
    for u, v in g.edges():
        common = len(nbr_sets[u] & nbr_sets[v])
        twice[u] += common
        twice[v] += common
    return {v: t // 2 for v, t in twice.items()}


def clustering_coefficients(g: Graph) -> dict[int, float]:
    """k_t / (k(k-1)/2) for every node of degree >= 2."""
    kt = triangle_coefficients(g)
    degs = g.degrees
    return {v: 2 * kt[v] / (k * (k - 1)) for v, k in degs.items() if k >= 2}


def _value_ccd(values: Sequence[int]) -> DistributionTable:
    n = len(values)
    counts = sorted(Counter(values).items())
    tail = np.cumsum([c for _, c in counts][::-1])[::-1]
    return DistributionTable.from_xy([x for x, _ in counts],
                                     [int(c) / n for c in tail], "ccd")


class TriangleSummary(NamedTuple):
    ccd: DistributionTable
    by_degree: DistributionTable
    mean: float


def triangle_summaries(g: Graph) -> TriangleSummary:
    _require_nodes(g)
    kt = triangle_coefficients(g)
    degs = g.degrees
    per_k: dict[int, list[int]] = defaultdict(list)
    for v, t in kt.items():
        per_k[degs[v]].append(t)
    ks = sorted(per_k)
    by_degree = DistributionTable.from_xy(
        ks, [sum(per_k[k]) / len(per_k[k]) for k in ks], "by_degree")
    return TriangleSummary(_value_ccd(list(kt.values())), by_degree,
                           sum(kt.values()) / len(kt))


# -- shortest paths ---------------------------------------------------------

@numba.njit(cache=True)
def _bfs_rows(indptr, indices, sources, n):  # pragma: no cover - compiled
    out = np.full((len(sources), n), -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    for row in range(len(sources)):
        dist = out[row]
        s = sources[row]
        dist[s] = 0
        head, tail = 0, 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = du
                    queue[tail] = w
                    tail += 1
    return out


@numba.njit(cache=True)
def _bfs_summary(indptr, indices, n):  # pragma: no cover - compiled
    # per-source distance sums and a global histogram over ordered pairs
    sums = np.zeros(n, dtype=np.int64)
    hist = np.zeros(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        head, tail = 0, 1
        queue[0] = s
        total = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = du
                    total += du
                    hist[du] += 1
                    queue[tail] = w
                    tail += 1
        sums[s] = total
    return sums, hist


def distances_from(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """Hop distances from each source (rows) to every node in node order; -1 if unreachable."""
    idx = g.index
    a = g.csr
    src = np.array([idx[s] for s in sources], dtype=np.int64)
    return _bfs_rows(a.indptr, a.indices, src, len(g))


class PathStats(NamedTuple):
    ccd: DistributionTable
    by_degree: DistributionTable
    ell_star: float


def shortest_path_stats(g: Graph) -> PathStats:
    """Hop-distance statistics over the largest connected component."""
    _require_nodes(g)
    h = largest_connected_component(g)
    n = len(h)
    if n < 2:
        raise UndefinedMetricError("single_node", "component has a single node")
    a = h.csr
    sums, hist = _bfs_summary(a.indptr, a.indices, n)
    pairs = n * (n - 1)  # ordered
    diameter = int(np.flatnonzero(hist)[-1])
    tail = np.cumsum(hist[1:diameter + 1][::-1])[::-1]
    ccd = DistributionTable.from_xy(list(range(1, diameter + 1)),
                                    [int(c) / pairs for c in tail], "ccd")
    per_k: dict[int, list[int]] = defaultdict(list)
    for i, v in enumerate(h.nodes):
        per_k[h.degree(v)].append(int(sums[i]))
    ks = sorted(per_k)
    by_degree = DistributionTable.from_xy(
        ks, [sum(per_k[k]) / (len(per_k[k]) * (n - 1)) for k in ks], "by_degree")
    return PathStats(ccd, by_degree, int(sums.sum()) / pairs)


# -- k-core -----------------------------------------------------------------

def coreness(g: Graph) -> tuple[dict[int, int], int]:
    """Per-node coreness by bucketed minimum-degree peeling, plus its maximum."""
    _require_nodes(g)
    deg = dict(g.degrees)
    buckets: list[set[int]] = [set() for _ in range(max(deg.values()) + 1)]
    for v, k in deg.items():
        buckets[k].add(v)
    core: dict[int, int] = {}
    k = 0
    for _ in range(len(deg)):
        # neighbours are only lowered to the current level, so k never drops
        while not buckets[k]:
            k += 1
        v = buckets[k].pop()
        core[v] = k
        for u in g.neighbors(v):
            du = deg[u]
            if u not in core and du > k:
                buckets[du].discard(u)
                buckets[du - 1].add(u)
                deg[u] = du - 1
    result = {v: core[v] for v in g.nodes}
    return result, max(result.values())


# -- reports ------------------------------------------------------------------

def max_degree(g: Graph) -> int:
    _require_nodes(g)
    return max(g.degrees.values())


def full_report(g: Graph) -> MetricsReport:
    """Every comparison-table statistic of ``g``.

    Statistics that are undefined for this graph are left absent with a
    reason code instead of aborting the whole report.
    """
    values: dict[str, float] = {"n": len(g), "l": g.edge_count}
    reasons: dict[str, str] = {}
    probes = {
        "k_max": lambda: max_degree(g),
        "gamma": lambda: degree_exponent(g),
        "alpha": lambda: assortative_coefficient(g),
        "n_clique": lambda: top_clique_size(g),
        "theta": lambda: rich_club_exponent(g),
        "mean_triangle": lambda: triangle_summaries(g).mean,
        "ell_star": lambda: shortest_path_stats(g).ell_star,
        "c_max": lambda: coreness(g)[1],
    }
    for name, probe in probes.items():
        try:
            values[name] = probe()
        except UndefinedMetricError as exc:
            reasons[name] = exc.reason
    return MetricsReport(**values, reasons=reasons,
                         disconnected=len(g) > 0 and not is_connected(g))


def average_reports(reports: Sequence[MetricsReport]) -> MetricsReport:
    """Field-wise arithmetic mean of reports sharing one defined-field pattern."""
    if not reports:
        raise ValueError("cannot average an empty sequence of reports")
    pattern = reports[0].defined()
    for i, rep in enumerate(reports[1:], start=1):
        if rep.defined() != pattern:
            mismatched = sorted(set(pattern).symmetric_difference(rep.defined()))
            raise ValueError(
                f"report {i} differs in defined fields: {', '.join(mismatched)}")
    values = {name: math.fsum(getattr(r, name) for r in reports) / len(reports)
              for name in pattern}
    return MetricsReport(**values, reasons=dict(reports[0].reasons),
                         disconnected=any(r.disconnected for r in reports))

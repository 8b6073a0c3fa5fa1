"""Slow, obviously-correct reference computations used to check the metrics.

These work on plain ``{node: set(neighbours)}`` dicts and share no code with
the package.
"""

from itertools import combinations

import numpy as np


def adjacency(edges):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def random_connected_edges(rng, n, extra_p):
    """Random tree by attaching each node to an earlier one, plus extra pairs."""
    perm = rng.permutation(n).tolist()
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(i))
        edges.add(tuple(sorted((perm[i], perm[j]))))
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < extra_p:
            edges.add((u, v))
    return sorted(edges)


def triangles(adj):
    count = dict.fromkeys(adj, 0)
    for a, b, c in combinations(sorted(adj), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            count[a] += 1
            count[b] += 1
            count[c] += 1
    return count


def coreness(adj):
    """Largest k such that the node survives repeated removal of degree < k nodes."""
    core = dict.fromkeys(adj, 0)
    k = 1
    while True:
        alive = set(adj)
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if len(adj[v] & alive) < k:
                    alive.discard(v)
                    changed = True
        if not alive:
            return core
        for v in alive:
            core[v] = k
        k += 1


def floyd_warshall(adj):
    nodes = sorted(adj)
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for v in nodes:
        for u in adj[v]:
            d[idx[v], idx[u]] = 1
    for m in range(n):
        d = np.minimum(d, d[:, [m]] + d[[m], :])
    return nodes, d


def links_within(adj, members):
    return sum(1 for a, b in combinations(members, 2) if b in adj[a])


def rank_list(adj):
    return sorted(adj, key=lambda v: (-len(adj[v]), v))


def rich_club_degree(adj):
    out = {}
    for k in sorted({len(n) for n in adj.values()}):
        club = [v for v in adj if len(adj[v]) >= k]
        if len(club) >= 2:
            out[k] = links_within(adj, club) / (len(club) * (len(club) - 1) / 2)
    return out


def rich_club_rank(adj):
    order = rank_list(adj)
    n = len(order)
    return {r: links_within(adj, order[:r]) / (r * (r - 1) / 2) for r in range(2, n + 1)}


def top_clique(adj):
    order = rank_list(adj)
    best = 1
    for r in range(2, len(order) + 1):
        if links_within(adj, order[:r]) == r * (r - 1) // 2:
            best = r
        else:
            break
    return best


def assortativity(adj):
    """The degree-correlation formula term by term, one term per link."""
    links = [(u, v) for u in adj for v in adj[u] if u < v]
    L = len(links)
    jk = [(len(adj[u]), len(adj[v])) for u, v in links]
    mean_half = sum((j + k) / 2 for j, k in jk) / L
    num = sum(j * k for j, k in jk) / L - mean_half ** 2
    den = sum((j * j + k * k) / 2 for j, k in jk) / L - mean_half ** 2
    return num / den


def ols_slope(xs, ys):
    lx, ly = np.log10(xs), np.log10(ys)
    a = np.vstack([lx, np.ones_like(lx)]).T
    return np.linalg.lstsq(a, ly, rcond=None)[0][0]

"""Seeded synthetic graphs and hypergraphs for tests and benchmarks.

Every generator is deterministic in its seed (PCG64) and returns library
containers directly.  Nothing here is part of the algorithmic surface.
"""

import numpy as np

from .graph import Graph, Hypergraph, build_graph, build_hypergraph, _graph_from_arrays

__all__ = [
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "grid_graph",
    "random_connected_graph",
    "random_bipartite_graph",
    "random_graph_with_m_edges",
    "random_hypergraph",
    "two_clique_bridge_hypergraph",
]


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def path_graph(n: int, weights=None) -> Graph:
    w = np.ones(n - 1) if weights is None else np.asarray(weights, float)
    i = np.arange(1, n)
    return build_graph(np.column_stack([i, i + 1, w]), n=n)


def cycle_graph(n: int, weights=None) -> Graph:
    w = np.ones(n) if weights is None else np.asarray(weights, float)
    i = np.arange(1, n + 1)
    j = np.r_[np.arange(2, n + 1), 1]
    return build_graph(np.column_stack([i, j, w]), n=n)


def complete_graph(n: int, weights=None) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    w = np.ones(iu.size) if weights is None else np.asarray(weights, float)
    return build_graph(np.column_stack([iu + 1, ju + 1, w]), n=n)


def grid_graph(rows: int, cols: int) -> Graph:
    """Unit-weight rows x cols lattice."""
    idx = np.arange(rows * cols).reshape(rows, cols)
    right = np.column_stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()])
    down = np.column_stack([idx[:-1, :].ravel(), idx[1:, :].ravel()])
    e = np.vstack([right, down]) + 1
    w = np.ones(e.shape[0])
    return build_graph(np.column_stack([e, w]), n=rows * cols)


def _random_tree_edges(n: int, rng: np.random.Generator) -> np.ndarray:
    """Each vertex i >= 1 attaches to a uniform earlier vertex."""
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    parents = (rng.random(n - 1) * np.arange(1, n)).astype(np.int64)
    return np.column_stack([np.arange(1, n), parents])


def random_connected_graph(
    n: int,
    extra_edges: int = 0,
    seed: int = 0,
    weighted: bool = True,
    weight_range: tuple[float, float] = (0.5, 2.0),
) -> Graph:
    """Random spanning tree plus `extra_edges` distinct random chords."""
    rng = _rng(seed)
    edges = _random_tree_edges(n, rng)
    have = {(int(a), int(b)) if a < b else (int(b), int(a)) for a, b in edges}
    chords = []
    attempts = 0
    while len(chords) < extra_edges and attempts < 50 * (extra_edges + 1):
        attempts += 1
        a, b = rng.integers(0, n, size=2)
        if a == b:
            continue
        key = (int(min(a, b)), int(max(a, b)))
        if key in have:
            continue
        have.add(key)
        chords.append(key)
    alledges = np.vstack([edges, np.asarray(chords, dtype=np.int64).reshape(-1, 2)])
    m = alledges.shape[0]
    w = rng.uniform(*weight_range, size=m) if weighted else np.ones(m)
    return _graph_from_arrays(n, alledges[:, 0], alledges[:, 1], w)


def random_bipartite_graph(n_left: int, n_right: int, extra_edges: int = 0,
                           seed: int = 0, weighted: bool = True) -> Graph:
    """Connected bipartite graph: a zigzag spanning tree plus random chords."""
    rng = _rng(seed)
    n = n_left + n_right
    left = np.arange(n_left)
    right = n_left + np.arange(n_right)
    # spanning zigzag: every left vertex to right[0], every right to left[0]
    u = np.concatenate([left, np.full(n_right - 1, left[0])])
    v = np.concatenate([np.full(n_left, right[0]), right[1:]])
    have = {(int(a), int(b)) for a, b in zip(u, v)}
    chords = []
    attempts = 0
    while len(chords) < extra_edges and attempts < 50 * (extra_edges + 1):
        attempts += 1
        a = int(rng.integers(0, n_left))
        b = int(n_left + rng.integers(0, n_right))
        if (a, b) in have:
            continue
        have.add((a, b))
        chords.append((a, b))
    if chords:
        ch = np.asarray(chords, dtype=np.int64)
        u = np.concatenate([u, ch[:, 0]])
        v = np.concatenate([v, ch[:, 1]])
    w = rng.uniform(0.5, 2.0, size=u.size) if weighted else np.ones(u.size)
    return _graph_from_arrays(n, u, v, w)


def random_graph_with_m_edges(m: int, avg_degree: float = 10.0,
                              seed: int = 0, weighted: bool = True) -> Graph:
    """Connected graph with exactly m edges, built fast for large m.

    A spanning path guarantees connectivity; the remaining edges are random
    distinct pairs.  n is chosen so the average degree is roughly as asked.
    """
    n = max(3, int(round(2.0 * m / avg_degree)))
    if m < n - 1:
        raise ValueError(f"m={m} cannot connect {n} vertices")
    rng = _rng(seed)
    path_u = np.arange(n - 1, dtype=np.int64)
    path_v = path_u + 1
    path_keys = path_u * n + path_v
    need = m - (n - 1)
    keys = set(path_keys.tolist())
    out_u, out_v = [path_u], [path_v]
    while need > 0:
        a = rng.integers(0, n, size=2 * need + 16)
        b = rng.integers(0, n, size=2 * need + 16)
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        mask = lo != hi
        cand = np.unique(lo[mask] * n + hi[mask])
        fresh = np.asarray([c for c in cand.tolist() if c not in keys],
                           dtype=np.int64)[:need]
        keys.update(fresh.tolist())
        out_u.append(fresh // n)
        out_v.append(fresh % n)
        need = m - sum(x.size for x in out_u)
    u = np.concatenate(out_u)
    v = np.concatenate(out_v)
    w = rng.uniform(0.5, 2.0, size=m) if weighted else np.ones(m)
    return _graph_from_arrays(n, u, v, w)


def random_hypergraph(nv: int, ne_extra: int, max_size: int = 5,
                      seed: int = 0, weighted: bool = False) -> Hypergraph:
    """Connected random hypergraph.

    A chain of 2-vertex hyperedges covers all vertices (connectivity), then
    ne_extra random hyperedges of size 2..max_size are added.
    """
    rng = _rng(seed)
    edges = [([i, i + 1], 1.0) for i in range(1, nv)]
    for _ in range(ne_extra):
        size = int(rng.integers(2, max_size + 1))
        mem = rng.choice(nv, size=min(size, nv), replace=False) + 1
        w = float(np.round(rng.uniform(1, 10))) if weighted else 1.0
        edges.append((mem.tolist(), w))
    return build_hypergraph(nv, edges)


def two_clique_bridge_hypergraph(half: int = 6, clique_weight: float = 2.0,
                                 bridge_weight: float = 1.0) -> Hypergraph:
    """Two pairwise-edge cliques joined by a single bridge hyperedge."""
    edges = []
    for base in (0, half):
        for a in range(half):
            for b in range(a + 1, half):
                edges.append(([base + a + 1, base + b + 1], clique_weight))
    edges.append(([half, half + 1], bridge_weight))
    return build_hypergraph(2 * half, edges)

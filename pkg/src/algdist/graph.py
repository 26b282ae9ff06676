"""Weighted simple graphs and hypergraphs in compressed sparse form.

Vertices are indexed 0..n-1 everywhere inside the library.  The ingestion
constructors (:func:`build_graph`, :func:`build_hypergraph`) accept the 1-based
ids used by the interchange file formats and convert once on entry; the file
writers convert back on the way out.

Both container types are frozen after construction and safe for concurrent
reads.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

__all__ = [
    "Graph",
    "Hypergraph",
    "BipartiteExpansion",
    "build_graph",
    "build_hypergraph",
    "bipartite_expand",
    "is_connected",
    "is_bipartite",
    "largest_component",
    "hypergraph_largest_component",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with positive edge weights.

    Attributes
    ----------
    n : int
        Number of vertices.
    adj : scipy.sparse.csr_array
        Symmetric (n, n) adjacency with zero diagonal and strictly positive
        stored values.  Treat as read-only.
    """

    n: int
    adj: sparse.csr_array

    @cached_property
    def degree_weights(self) -> np.ndarray:
        """Weighted degrees d_i = sum of incident edge weights, shape (n,)."""
        return np.asarray(self.adj.sum(axis=1)).ravel()

    @cached_property
    def degrees(self) -> np.ndarray:
        """Unweighted degrees (neighbor counts), shape (n,)."""
        return np.diff(self.adj.indptr)

    @cached_property
    def _edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        upper = sparse.triu(self.adj, k=1, format="coo")
        # csr -> triu keeps row-major order, so edges come out sorted by (u, v)
        u = upper.coords[0].astype(np.int64)
        v = upper.coords[1].astype(np.int64)
        return u, v, upper.data.copy()

    @property
    def edge_u(self) -> np.ndarray:
        """First endpoints of the canonical edge list (u < v, lexicographic)."""
        return self._edge_arrays[0]

    @property
    def edge_v(self) -> np.ndarray:
        return self._edge_arrays[1]

    @property
    def edge_w(self) -> np.ndarray:
        return self._edge_arrays[2]

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return self._edge_arrays[0].size

    @cached_property
    def connected(self) -> bool:
        if self.n <= 1:
            return True
        ncomp, _ = csgraph.connected_components(self.adj, directed=False)
        return int(ncomp) == 1

    @cached_property
    def _edge_index_per_slot(self) -> np.ndarray:
        # For each stored adjacency slot, the id of the undirected edge it
        # belongs to (both directions of edge e map to e).
        u, v, _ = self._edge_arrays
        ids = np.arange(u.size, dtype=np.int64)
        lookup = sparse.coo_array(
            (np.concatenate([ids, ids]) + 1,
             (np.concatenate([u, v]), np.concatenate([v, u]))),
            shape=(self.n, self.n),
        ).tocsr()
        lookup.sort_indices()
        return lookup.data - 1

    def neighbor_slices(self):
        """(indptr, neighbor ids, slot weights, slot edge ids) for traversal."""
        return (self.adj.indptr, self.adj.indices, self.adj.data,
                self._edge_index_per_slot)

    def validate(self) -> None:
        """Check structural invariants; raises AssertionError on violation."""
        assert self.adj.shape == (self.n, self.n)
        assert (abs(self.adj - self.adj.T)).nnz == 0, "adjacency not symmetric"
        assert self.adj.diagonal().max(initial=0.0) == 0.0, "self-loop stored"
        assert self.adj.nnz == 0 or self.adj.data.min() > 0.0, "nonpositive weight"
        total = self.degree_weights.sum()
        assert np.isclose(total, 2.0 * self.edge_w.sum(), rtol=1e-12, atol=1e-12)


def _graph_from_arrays(n: int, u: np.ndarray, v: np.ndarray,
                       w: np.ndarray) -> Graph:
    """Assemble a Graph from 0-based endpoint arrays.

    Duplicate (u, v) entries are summed; entries that sum to zero are dropped.
    Callers must have validated ids and signs already.
    """
    # sum duplicates on canonical (lo, hi) keys first, then mirror the summed
    # triangle: summing each orientation separately can differ in the last
    # ulp, which would break exact symmetry of adj
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    upper = sparse.coo_array((w.astype(np.float64), (lo, hi)),
                             shape=(n, n)).tocsr()
    adj = (upper + upper.T).tocsr()
    adj.eliminate_zeros()
    adj.sort_indices()
    return Graph(n=n, adj=adj)


def build_graph(edges, n: int | None = None) -> Graph:
    """Build a Graph from a list of weighted edges with 1-based vertex ids.

    Parameters
    ----------
    edges : array-like of (i, j, w)
        Edge triples with 1 <= i, j <= n, i != j, w >= 0.  Duplicate (i, j)
        entries (in either orientation) are summed; edges whose total weight
        is zero are dropped.
    n : int, optional
        Vertex count.  Defaults to the largest id mentioned.

    Returns
    -------
    Graph

    Raises
    ------
    ValueError
        On self-loops, out-of-range or non-integral ids, negative or
        non-finite weights.
    """
    arr = np.asarray(edges, dtype=np.float64)
    if arr.size == 0:
        arr = arr.reshape(0, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("edges must be (i, j, w) triples")
    i, j, w = arr[:, 0], arr[:, 1], arr[:, 2]
    if not (np.all(i == np.round(i)) and np.all(j == np.round(j))):
        raise ValueError("vertex ids must be integers")
    if np.any(i == j):
        raise ValueError("self-loops are not allowed")
    if not np.all(np.isfinite(w)):
        raise ValueError("edge weights must be finite")
    if w.size and w.min() < 0.0:
        raise ValueError("edge weights must be nonnegative")
    if n is None:
        if arr.shape[0] == 0:
            raise ValueError("n is required when the edge list is empty")
        n = int(max(i.max(), j.max()))
    if n < 1:
        raise ValueError("n must be at least 1")
    if arr.shape[0] and (i.min() < 1 or j.min() < 1 or i.max() > n or j.max() > n):
        raise ValueError(f"vertex ids must lie in 1..{n}")
    return _graph_from_arrays(n, i.astype(np.int64) - 1, j.astype(np.int64) - 1, w)


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Weighted hypergraph: nv vertices, hyperedges as vertex subsets.

    `members[j]` is a sorted 0-based int array; `weights[j]` >= 0.
    """

    nv: int
    members: tuple
    weights: np.ndarray

    @property
    def ne(self) -> int:
        return len(self.members)

    @property
    def pin_count(self) -> int:
        return int(sum(m.size for m in self.members))

    def with_weights(self, weights) -> "Hypergraph":
        """Same structure, different hyperedge weights (used for surrogates)."""
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (self.ne,):
            raise ValueError(f"expected {self.ne} weights, got shape {w.shape}")
        if not np.all(np.isfinite(w)) or (w.size and w.min() < 0.0):
            raise ValueError("hyperedge weights must be finite and nonnegative")
        return Hypergraph(nv=self.nv, members=self.members, weights=w)


def build_hypergraph(nv: int, hyperedges) -> Hypergraph:
    """Build a Hypergraph from (members, weight) pairs with 1-based ids.

    Each member list must be nonempty, within 1..nv, and free of repeats.
    """
    if nv < 1:
        raise ValueError("nv must be at least 1")
    members = []
    weights = []
    for pos, (ids, w) in enumerate(hyperedges):
        arr = np.asarray(list(ids), dtype=np.int64)
        if arr.size == 0:
            raise ValueError(f"hyperedge {pos + 1} is empty")
        if arr.min() < 1 or arr.max() > nv:
            raise ValueError(f"hyperedge {pos + 1}: vertex id out of range 1..{nv}")
        arr = np.sort(arr) - 1
        if np.any(arr[1:] == arr[:-1]):
            raise ValueError(f"hyperedge {pos + 1}: repeated vertex id")
        w = float(w)
        if not np.isfinite(w) or w < 0.0:
            raise ValueError(f"hyperedge {pos + 1}: weight must be finite and >= 0")
        members.append(arr)
        weights.append(w)
    return Hypergraph(nv=nv, members=tuple(members),
                      weights=np.asarray(weights, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class BipartiteExpansion:
    """Star-expansion of a hypergraph into a bipartite graph.

    Hypergraph vertex i becomes graph node i; hyperedge j becomes graph node
    nv + j; each membership contributes one edge of weight w_j.
    """

    graph: Graph
    vertex_nodes: np.ndarray
    edge_nodes: np.ndarray


def bipartite_expand(h: Hypergraph) -> BipartiteExpansion:
    """Expand a hypergraph into its bipartite model graph.

    Returns a graph on nv + ne nodes with sum(|h_j|) edges (zero-weight
    hyperedges contribute no stored edges).
    """
    if h.ne == 0:
        raise ValueError("hypergraph has no hyperedges")
    sizes = np.array([m.size for m in h.members], dtype=np.int64)
    if np.any(sizes == 0):
        raise ValueError("empty hyperedge")
    u = np.concatenate(h.members)
    v = np.repeat(h.nv + np.arange(h.ne, dtype=np.int64), sizes)
    w = np.repeat(h.weights, sizes)
    g = _graph_from_arrays(h.nv + h.ne, u, v, w)
    return BipartiteExpansion(
        graph=g,
        vertex_nodes=np.arange(h.nv, dtype=np.int64),
        edge_nodes=h.nv + np.arange(h.ne, dtype=np.int64),
    )


def is_connected(g: Graph) -> bool:
    """True when every vertex is reachable from vertex 0."""
    return g.connected


def is_bipartite(g: Graph) -> bool:
    """Two-colorability check by BFS over every component."""
    color = np.full(g.n, -1, dtype=np.int8)
    indptr, indices = g.adj.indptr, g.adj.indices
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            cx = color[x]
            for y in indices[indptr[x]:indptr[x + 1]]:
                if color[y] < 0:
                    color[y] = cx ^ 1
                    stack.append(int(y))
                elif color[y] == cx:
                    return False
    return True


def largest_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Restrict to the largest connected component.

    Returns the sub-Graph and the array of original vertex indices it kept
    (new id -> old id).
    """
    ncomp, labels = csgraph.connected_components(g.adj, directed=False)
    if ncomp == 1:
        return g, np.arange(g.n, dtype=np.int64)
    keep_label = np.argmax(np.bincount(labels))
    keep = np.flatnonzero(labels == keep_label).astype(np.int64)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    u, v, w = g.edge_u, g.edge_v, g.edge_w
    mask = (remap[u] >= 0) & (remap[v] >= 0)
    sub = _graph_from_arrays(keep.size, remap[u[mask]], remap[v[mask]], w[mask])
    return sub, keep


def hypergraph_largest_component(
    h: Hypergraph,
) -> tuple[Hypergraph, np.ndarray, np.ndarray]:
    """Restrict a hypergraph to the largest component of its bipartite model.

    Returns (sub-hypergraph, kept vertex ids, kept hyperedge ids), both id
    arrays mapping new index -> old index.  Vertices in no kept hyperedge are
    dropped.
    """
    exp = bipartite_expand(h)
    ncomp, labels = csgraph.connected_components(exp.graph.adj, directed=False)
    if ncomp == 1:
        return h, np.arange(h.nv, dtype=np.int64), np.arange(h.ne, dtype=np.int64)
    # weigh components by how many original vertices they hold
    vlabels = labels[: h.nv]
    keep_label = np.argmax(np.bincount(vlabels, minlength=labels.max() + 1))
    vkeep = np.flatnonzero(vlabels == keep_label).astype(np.int64)
    vmap = np.full(h.nv, -1, dtype=np.int64)
    vmap[vkeep] = np.arange(vkeep.size)
    ekeep = [j for j in range(h.ne) if labels[h.nv + j] == keep_label]
    members = tuple(np.sort(vmap[h.members[j]]) for j in ekeep)
    sub = Hypergraph(nv=vkeep.size, members=members,
                     weights=h.weights[np.asarray(ekeep, dtype=np.int64)])
    return sub, vkeep, np.asarray(ekeep, dtype=np.int64)

"""Maximum-weight matching heuristics driven by algebraic distances.

The preprocessing step turns per-edge distances rho into surrogate edge
weights: each vertex accumulates a_i = sum over incident edges of 1/rho,
and an edge's surrogate is s'_uv = a_u/deg_u + a_v/deg_v.  The heuristics
(greedy and path-growing, both 1/2-approximations) then *select* edges by
the surrogate, while reported quality is always measured in the original
weights.
"""

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .distance import DistanceField, edge_distances
from .graph import Graph
from .relax import RelaxationConfig, relax

__all__ = [
    "Matching",
    "SurrogateWeights",
    "MatchingReport",
    "matching_preprocess",
    "greedy_matching",
    "path_growing_matching",
    "brute_force_matching",
    "matching_experiment",
]

MATCHING_ALGOS = ("greedy", "path_growing")

_BRUTE_FORCE_MAX_EDGES = 25


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edge set, weighed both ways.

    weight_original sums the graph's own weights over the matched edges;
    weight_selection sums the weights the algorithm actually optimized
    (identical to weight_original when no surrogate was supplied).
    """

    edges: tuple
    weight_original: float
    weight_selection: float

    @property
    def cardinality(self) -> int:
        return len(self.edges)


@dataclass(frozen=True, eq=False)
class SurrogateWeights:
    """Preprocessed edge weights aligned with the graph's edge list."""

    vertex_scores: np.ndarray
    edge_weights: np.ndarray


def matching_preprocess(g: Graph, dist: DistanceField,
                        eps: float = 1e-12) -> SurrogateWeights:
    """Turn edge distances into surrogate matching weights.

    dist must cover exactly the edges of g in canonical order (as produced
    by edge_distances(g, ...)).  Distances are floored at eps before
    inversion so coincident vertices cannot blow up.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    expected = np.column_stack([g.edge_u, g.edge_v])
    if dist.pairs.shape != expected.shape or not np.array_equal(dist.pairs, expected):
        raise ValueError("distance field does not cover the graph's edge list")
    inv = 1.0 / np.maximum(dist.values, eps)
    a = np.zeros(g.n)
    np.add.at(a, g.edge_u, inv)
    np.add.at(a, g.edge_v, inv)
    deg = g.degrees.astype(np.float64)
    sprime = a[g.edge_u] / deg[g.edge_u] + a[g.edge_v] / deg[g.edge_v]
    return SurrogateWeights(vertex_scores=a, edge_weights=sprime)


def _selection_weights(g: Graph, weights) -> np.ndarray:
    if weights is None:
        return g.edge_w
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (g.m,):
        raise ValueError(f"expected {g.m} edge weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("selection weights must be finite")
    return w


def _make_matching(g: Graph, picked: list, sel: np.ndarray) -> Matching:
    used = np.zeros(g.n, dtype=bool)
    for e in picked:
        u, v = int(g.edge_u[e]), int(g.edge_v[e])
        if used[u] or used[v]:
            raise RuntimeError("internal error: matched edges share a vertex")
        used[u] = used[v] = True
    edges = tuple(sorted((int(g.edge_u[e]), int(g.edge_v[e])) for e in picked))
    return Matching(
        edges=edges,
        weight_original=float(g.edge_w[picked].sum()) if picked else 0.0,
        weight_selection=float(sel[picked].sum()) if picked else 0.0,
    )


def greedy_matching(g: Graph, weights=None) -> Matching:
    """Scan edges by descending weight, taking each edge whose ends are free.

    Ties are broken lexicographically by (u, v), stably, so the result is
    deterministic.  1/2-approximation of the maximum-weight matching in the
    weights used for selection.
    """
    sel = _selection_weights(g, weights)
    order = np.lexsort((g.edge_v, g.edge_u, -sel))
    used = np.zeros(g.n, dtype=bool)
    picked: list[int] = []
    for e in order:
        u, v = g.edge_u[e], g.edge_v[e]
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            picked.append(int(e))
    return _make_matching(g, picked, sel)


def path_growing_matching(g: Graph, weights=None) -> Matching:
    """Grow vertex-disjoint paths along locally heaviest edges.

    From each not-yet-visited start vertex (ascending id) the walk repeatedly
    takes the heaviest remaining edge at the current endpoint, assigning
    edges alternately to two candidate matchings and deleting the vertex it
    leaves; the heavier candidate (in selection weights) wins.  Also a
    1/2-approximation.
    """
    sel = _selection_weights(g, weights)
    indptr, indices, _, slot_edge = g.neighbor_slices()
    removed = np.zeros(g.n, dtype=bool)
    cand: tuple[list[int], list[int]] = ([], [])
    side = 0
    for start in range(g.n):
        if removed[start]:
            continue
        x = start
        while True:
            best_e = -1
            best_key = None
            for slot in range(indptr[x], indptr[x + 1]):
                y = indices[slot]
                if removed[y]:
                    continue
                e = slot_edge[slot]
                key = (sel[e], -int(y))
                if best_key is None or key > best_key:
                    best_key, best_e = key, int(e)
            removed[x] = True
            if best_e < 0:
                break
            cand[side].append(best_e)
            side ^= 1
            u, v = g.edge_u[best_e], g.edge_v[best_e]
            x = int(v) if u == x else int(u)
    w0 = float(sel[cand[0]].sum()) if cand[0] else 0.0
    w1 = float(sel[cand[1]].sum()) if cand[1] else 0.0
    picked = cand[0] if w0 >= w1 else cand[1]
    return _make_matching(g, picked, sel)


def brute_force_matching(g: Graph, weights=None) -> Matching:
    """Exact maximum-weight matching by exhaustive search over edge subsets.

    Branch-and-bound on the edge list; only for tiny graphs
    (m <= 25), where it serves as the oracle for the heuristics.
    """
    sel = _selection_weights(g, weights)
    if g.m > _BRUTE_FORCE_MAX_EDGES:
        raise ValueError(
            f"exhaustive search limited to m <= {_BRUTE_FORCE_MAX_EDGES}, got {g.m}")
    order = np.argsort(-sel, kind="stable")
    eu = g.edge_u[order]
    ev = g.edge_v[order]
    ew = sel[order]
    gain = np.concatenate([np.cumsum(np.maximum(ew, 0.0)[::-1])[::-1], [0.0]])
    best_w = -math.inf
    best: list[int] = []

    def search(idx: int, used: int, acc: float, picked: list[int]) -> None:
        nonlocal best_w, best
        if acc + gain[idx] <= best_w:
            return
        if idx == len(ew):
            if acc > best_w:
                best_w, best = acc, picked.copy()
            return
        u, v = int(eu[idx]), int(ev[idx])
        if not (used >> u & 1) and not (used >> v & 1):
            picked.append(idx)
            search(idx + 1, used | 1 << u | 1 << v, acc + float(ew[idx]), picked)
            picked.pop()
        search(idx + 1, used, acc, picked)

    search(0, 0, 0.0, [])
    return _make_matching(g, [int(order[i]) for i in best], sel)


@dataclass(frozen=True, eq=False)
class MatchingReport:
    """Outcome of the surrogate-vs-plain matching experiment.

    Ratios are preprocessed/baseline; quality is always the original-weight
    cost.  weight_ratios[r] belongs to seeds[r].
    """

    algo: str
    p: float
    seeds: tuple
    baseline_weight: float
    baseline_cardinality: int
    weights: np.ndarray
    cardinalities: np.ndarray
    weight_ratios: np.ndarray
    card_ratios: np.ndarray
    mean_weight_ratio: float
    mean_card_ratio: float
    ratio_definition: str
    relax_seconds: float
    matching_seconds: float


def matching_experiment(
    g: Graph,
    cfg: RelaxationConfig | None = None,
    algo: str = "greedy",
    p: float = math.inf,
    repetitions: int = 20,
    eps: float = 1e-12,
    invert_surrogate: bool = False,
    workers: int = 1,
) -> MatchingReport:
    """Seeded repetitions of: relax, preprocess, match; versus the plain run.

    Repetition r uses seed cfg.seed + r.  The baseline (same algorithm on the
    original weights) is deterministic and computed once.  With
    invert_surrogate=True the selection weight is 1/s' instead of s', i.e.
    preference flips toward weakly connected pairs.
    """
    if algo not in MATCHING_ALGOS:
        raise ValueError(f"algo must be one of {MATCHING_ALGOS}, got {algo!r}")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    cfg = cfg or RelaxationConfig()
    run = greedy_matching if algo == "greedy" else path_growing_matching

    t0 = time.perf_counter()
    base = run(g)
    match_sec = time.perf_counter() - t0
    relax_sec = 0.0

    seeds, weights, cards = [], [], []
    for r in range(repetitions):
        seed = cfg.seed + r
        seeds.append(seed)
        t0 = time.perf_counter()
        iters = relax(g, replace(cfg, seed=seed), workers=workers)
        dist = edge_distances(g, iters, p)
        sw = matching_preprocess(g, dist, eps)
        relax_sec += time.perf_counter() - t0
        sel = 1.0 / sw.edge_weights if invert_surrogate else sw.edge_weights
        t0 = time.perf_counter()
        m = run(g, sel)
        match_sec += time.perf_counter() - t0
        weights.append(m.weight_original)
        cards.append(m.cardinality)

    weights = np.asarray(weights)
    cards = np.asarray(cards, dtype=np.float64)
    wr = weights / base.weight_original if base.weight_original > 0 else \
        np.full(repetitions, np.nan)
    cr = cards / base.cardinality if base.cardinality > 0 else \
        np.full(repetitions, np.nan)
    return MatchingReport(
        algo=algo, p=p, seeds=tuple(seeds),
        baseline_weight=base.weight_original,
        baseline_cardinality=base.cardinality,
        weights=weights, cardinalities=cards.astype(np.int64),
        weight_ratios=wr, card_ratios=cr,
        mean_weight_ratio=float(np.mean(wr)),
        mean_card_ratio=float(np.mean(cr)),
        ratio_definition="preprocessed/baseline, original-weight cost",
        relax_seconds=relax_sec, matching_seconds=match_sec,
    )

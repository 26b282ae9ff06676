"""Algebraic distances between vertices from relaxed test vectors.

A single run gives s_ij = |x_i - x_j|; R runs are combined by a p-norm
across runs (p = inf takes the max).  Dividing by sigma2^k rescales the raw
distance so it converges to the slow-mode difference |(e_i - e_j)^T xi|
instead of to zero.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .relax import PRNG_NAME, IterateSet

__all__ = [
    "DistanceField",
    "pair_distance",
    "edge_distances",
    "normalized_distance",
]


def _check_p(p: float) -> float:
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"p must be >= 1 (or inf), got {p}")
    return p


@dataclass(frozen=True, eq=False)
class DistanceField:
    """Per-pair distances plus the configuration that produced them.

    pairs holds 0-based (u, v) rows with u < v; values[r] is the distance of
    pairs[r].  Lookups are symmetric and value(i, i) == 0 by convention.
    """

    pairs: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pairs = np.asarray(self.pairs)
        values = np.asarray(self.values, dtype=np.float64)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ValueError(f"pairs must be (m, 2), got {pairs.shape}")
        if values.shape != (pairs.shape[0],):
            raise ValueError(
                f"need one value per pair: {pairs.shape[0]} pairs, "
                f"values shape {values.shape}")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "values", values)

    def value(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        a, b = (i, j) if i < j else (j, i)
        key = (int(a), int(b))
        table = self.__dict__.get("_table")
        if table is None:
            table = {(int(u), int(v)): float(x)
                     for u, v, x in zip(self.pairs[:, 0], self.pairs[:, 1],
                                        self.values)}
            self.__dict__["_table"] = table
        if key not in table:
            raise KeyError(f"pair {key} not covered by this field")
        return table[key]


def pair_distance(iters: IterateSet, i: int, j: int, p: float = math.inf) -> float:
    """p-normed distance between vertices i and j across the R runs."""
    p = _check_p(p)
    n = iters.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"vertex ids must lie in 0..{n - 1}")
    diffs = np.abs(iters.vectors[i] - iters.vectors[j])
    if math.isinf(p):
        return float(diffs.max())
    return float((diffs ** p).sum() ** (1.0 / p))


def edge_distances(g: Graph, iters: IterateSet, p: float = math.inf) -> DistanceField:
    """Distances over every edge of g, aligned with its canonical edge list.

    Cost is O(R m).  The field's meta echoes the relaxation configuration so
    downstream CSV output is self-describing.
    """
    p = _check_p(p)
    if iters.n != g.n:
        raise ValueError(f"iterate set is over {iters.n} vertices, graph has {g.n}")
    diffs = np.abs(iters.vectors[g.edge_u] - iters.vectors[g.edge_v])
    if math.isinf(p):
        values = diffs.max(axis=1)
    else:
        values = (diffs ** p).sum(axis=1) ** (1.0 / p)
    cfg = iters.config
    meta = {
        "omega": cfg.omega, "k": cfg.k, "R": cfg.R, "seed": cfg.seed,
        "p": p, "prng": PRNG_NAME, "centered": cfg.center_each_sweep,
    }
    return DistanceField(pairs=np.column_stack([g.edge_u, g.edge_v]),
                         values=values, meta=meta)


def normalized_distance(s, sigma2: float, k: int, tol: float = 1e-12):
    """Rescale raw distances by sigma2^k.

    sigma2 is the second largest-magnitude relaxation eigenvalue for the
    omega the distances were computed with (see spectral.PencilEigen.sigma2).
    Rejects |sigma2| <= tol, where the rescaling is meaningless.
    """
    if abs(sigma2) <= tol:
        raise ValueError(f"|sigma2| = {abs(sigma2):.3g} too small to normalize by")
    if k < 0:
        raise ValueError("k must be >= 0")
    return np.asarray(s, dtype=np.float64) / sigma2 ** k

"""Jacobi over-relaxation sweeps on the graph Laplacian and diagnostics.

The basic update is

    x <- (1 - omega) * x + omega * D^{-1} W x

with W the weighted adjacency and D the diagonal of weighted degrees.  For
omega in (0, 2 / rho(D^{-1/2} L D^{-1/2})) the iteration is convergent with
spectral radius exactly 1, and differences |x_i - x_j| settle into the
slowest non-constant mode; those differences are the raw material for the
distance module.

Everything here is deterministic: initial vectors come from an explicitly
seeded PCG64 generator and are generated up front, so results do not depend
on how many workers execute the sweeps.
"""

import concurrent.futures
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .graph import Graph, is_connected

__all__ = [
    "PRNG_NAME",
    "RelaxationConfig",
    "IterateSet",
    "StabilityReport",
    "jor_sweep",
    "relax",
    "iteration_matrix",
    "stability_report",
    "model_residual",
]

PRNG_NAME = "PCG64"

_METHODS = ("gs", "jac", "sor", "jor")


@dataclass(frozen=True)
class RelaxationConfig:
    """Settings for a relaxation run.

    Attributes
    ----------
    omega : float
        Damping factor, in (0, 2).  Default 1/2.
    k : int
        Number of sweeps, >= 0.
    R : int
        Number of independent randomly started runs, >= 1.
    seed : int
        Seed for the PCG64 generator producing the initial vectors.
    center_each_sweep : bool
        Subtract the mean after every sweep.  Differences x_i - x_j are
        unchanged; magnitudes stay bounded on long runs.
    keep_history : bool
        Also retain the iterate after k-1 sweeps (for diagnostics).
    """

    omega: float = 0.5
    k: int = 20
    R: int = 10
    seed: int = 0
    center_each_sweep: bool = False
    keep_history: bool = False

    def __post_init__(self):
        if not (0.0 < self.omega < 2.0):
            raise ValueError(f"omega must lie in (0, 2), got {self.omega}")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.R < 1:
            raise ValueError("R must be >= 1")


@dataclass(frozen=True, eq=False)
class IterateSet:
    """Relaxed vectors: column r of `vectors` is run r after k sweeps."""

    vectors: np.ndarray
    prev_vectors: np.ndarray | None
    config: RelaxationConfig

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def R(self) -> int:
        return self.vectors.shape[1]


def jor_sweep(g: Graph, x: np.ndarray, omega: float = 0.5) -> np.ndarray:
    """One Jacobi over-relaxation sweep.

    Parameters
    ----------
    g : Graph
        Graph without isolated vertices (every weighted degree positive).
    x : ndarray, shape (n,)
        Current iterate; left unmodified.
    omega : float
        Damping factor in (0, 2).

    Returns
    -------
    ndarray
        (1 - omega) * x + omega * (W @ x) / d, a new array.
    """
    if not (0.0 < omega < 2.0):
        raise ValueError(f"omega must lie in (0, 2), got {omega}")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"x must have shape ({g.n},), got {x.shape}")
    d = g.degree_weights
    if d.size == 0 or d.min() <= 0.0:
        raise ValueError("graph has an isolated vertex (zero weighted degree)")
    return (1.0 - omega) * x + omega * (g.adj @ x) / d


def _initial_vectors(n: int, R: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.uniform(-0.5, 0.5, size=(n, R))


def _run_column(g: Graph, x0: np.ndarray, cfg: RelaxationConfig):
    x = x0.copy()
    prev = None
    for sweep in range(cfg.k):
        if cfg.keep_history and sweep == cfg.k - 1:
            prev = x.copy()
        x = jor_sweep(g, x, cfg.omega)
        if cfg.center_each_sweep:
            x = x - x.mean()
    return x, prev


def relax(g: Graph, cfg: RelaxationConfig, x0=None, workers: int = 1) -> IterateSet:
    """Run R seeded relaxation sweepsets on a connected graph.

    Parameters
    ----------
    g : Graph
        Must be connected (reject otherwise; extract a component first).
    cfg : RelaxationConfig
    x0 : ndarray, optional
        Forced initial vectors, shape (n,) (requires cfg.R == 1) or (n, R).
        When omitted, entries are drawn i.i.d. uniform on [-0.5, 0.5) from
        PCG64(cfg.seed), generated in full before any sweep so the result is
        independent of `workers`.
    workers : int
        Thread count for running the R columns concurrently.  Results are
        bitwise identical for any value.

    Returns
    -------
    IterateSet
    """
    if not is_connected(g):
        raise ValueError("graph is not connected; relax requires one component")
    if x0 is None:
        X0 = _initial_vectors(g.n, cfg.R, cfg.seed)
    else:
        X0 = np.asarray(x0, dtype=np.float64)
        if X0.ndim == 1:
            if cfg.R != 1:
                raise ValueError("1-D x0 requires cfg.R == 1")
            X0 = X0[:, None]
        if X0.shape != (g.n, cfg.R):
            raise ValueError(f"x0 must have shape ({g.n}, {cfg.R})")
        X0 = X0.copy()

    out = np.empty_like(X0)
    prev = np.empty_like(X0) if (cfg.keep_history and cfg.k >= 1) else None

    def work(r: int) -> None:
        x, p = _run_column(g, X0[:, r], cfg)
        out[:, r] = x
        if prev is not None:
            prev[:, r] = p

    if workers > 1 and cfg.R > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as tp:
            list(tp.map(work, range(cfg.R)))
    else:
        for r in range(cfg.R):
            work(r)
    return IterateSet(vectors=out, prev_vectors=prev, config=cfg)


def iteration_matrix(g: Graph, method: str, omega: float = 0.5) -> np.ndarray:
    """Dense iteration matrix of a classical splitting of L = D - W.

    method is one of "gs", "jac", "sor", "jor":

        gs   (D - W_L)^{-1} W_U
        jac  D^{-1} (W_L + W_U)
        sor  (D/omega - W_L)^{-1} ((1/omega - 1) D + W_U)
        jor  (D/omega)^{-1} ((1/omega - 1) D + W_L + W_U)

    with W_L / W_U the strict lower / upper triangles of W.  omega is used by
    sor and jor only.  Dense; intended for test-scale graphs.
    """
    key = method.lower()
    if key not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}, got {method!r}")
    d = g.degree_weights
    if d.size == 0 or d.min() <= 0.0:
        raise ValueError("graph has an isolated vertex (zero weighted degree)")
    W = g.adj.toarray()
    WL = np.tril(W, -1)
    WU = np.triu(W, 1)
    if key == "gs":
        return solve_triangular(np.diag(d) - WL, WU, lower=True)
    if key == "jac":
        return (WL + WU) / d[:, None]
    if not (0.0 < omega < 2.0):
        raise ValueError(f"omega must lie in (0, 2), got {omega}")
    if key == "sor":
        lhs = np.diag(d / omega) - WL
        rhs = (1.0 / omega - 1.0) * np.diag(d) + WU
        return solve_triangular(lhs, rhs, lower=True)
    # jor: (D/omega)^{-1} M is a row rescaling
    rhs = (1.0 / omega - 1.0) * np.diag(d) + WL + WU
    return rhs * (omega / d)[:, None]


@dataclass(frozen=True)
class StabilityReport:
    """How settled the iterate direction is, plus the a-priori bound.

    angle_defect = 1 - <x_k, x_{k+1}>^2 / (|x_k|^2 |x_{k+1}|^2), clamped to
    [0, 1].  When the eigenbasis expansion of the start vector is available
    the report also carries the bound ingredients: alpha, the root r_k, f_k,
    kappa = cond(D), and bound_rhs = 4 kappa f_k / (1 + kappa f_k)^2.  The
    bound is only claimed when 1 - omega * mu_max >= 0, f_k <= 1/kappa and
    the constant-mode coefficient a_1 is nonzero.
    """

    angle_defect: float
    kappa: float
    omega: float | None = None
    k: int | None = None
    alpha: float | None = None
    r_k: float | None = None
    f_k: float | None = None
    bound_rhs: float | None = None
    cond_spectrum_ok: bool | None = None
    cond_fk_ok: bool | None = None
    bound_applies: bool = False
    note: str = ""


def _bisect_root(alpha: float, k: int, tol: float = 1e-12) -> float:
    """Root in [0, 1] of 2 alpha r^(2k+1) (1+r) - k + (k+1) r = 0.

    The function is strictly increasing on [0, 1] with g(0) = -k < 0 and
    g(1) = 4 alpha + 1 > 0, so plain bisection converges.
    """

    def gfun(r: float) -> float:
        return 2.0 * alpha * r ** (2 * k + 1) * (1.0 + r) - k + (k + 1) * r

    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gfun(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _angle_defect(x_k: np.ndarray, x_k1: np.ndarray) -> float:
    nk = np.linalg.norm(x_k)
    nk1 = np.linalg.norm(x_k1)
    if nk == 0.0 or nk1 == 0.0:
        raise ValueError("iterates must be nonzero")
    c = float(np.dot(x_k, x_k1) / (nk * nk1))
    return min(1.0, max(0.0, 1.0 - c * c))


def stability_report(
    g: Graph,
    x_k: np.ndarray,
    x_k1: np.ndarray,
    a_coeffs: np.ndarray | None = None,
    cfg: RelaxationConfig | None = None,
    mu_max: float | None = None,
) -> StabilityReport:
    """Angle defect between successive iterates and the a-priori bound.

    Parameters
    ----------
    g : Graph
    x_k, x_k1 : ndarray
        Successive iterates x^(k) and x^(k+1) of one run.
    a_coeffs : ndarray, optional
        Expansion of the *initial* vector in the D-orthonormal eigenbasis
        (see spectral.PencilEigen.expand).  Enables the bound.
    cfg : RelaxationConfig, optional
        Supplies omega and the sweep count k; required with a_coeffs.
    mu_max : float, optional
        Largest pencil eigenvalue; required with a_coeffs (it feeds the
        1 - omega * mu_max >= 0 precondition).

    Returns
    -------
    StabilityReport
    """
    defect = _angle_defect(np.asarray(x_k, float), np.asarray(x_k1, float))
    d = g.degree_weights
    kappa = float(d.max() / d.min())
    if a_coeffs is None:
        return StabilityReport(angle_defect=defect, kappa=kappa,
                               note="no eigenbasis expansion supplied")
    if cfg is None or mu_max is None:
        raise ValueError("a_coeffs requires cfg and mu_max")
    if cfg.k < 1:
        raise ValueError("the bound needs at least one sweep (cfg.k >= 1)")
    a = np.asarray(a_coeffs, dtype=np.float64)
    a1 = a[0]
    rest = float(np.dot(a[1:], a[1:]))
    if a1 == 0.0 or rest / (a1 * a1) > 1e24:
        return StabilityReport(
            angle_defect=defect, kappa=kappa, omega=cfg.omega, k=cfg.k,
            note="constant-mode coefficient a_1 is (numerically) zero; "
                 "bound not applicable")
    alpha = rest / (4.0 * a1 * a1)
    r_k = _bisect_root(alpha, cfg.k)
    f_k = (alpha * r_k ** (2 * cfg.k) * (1.0 - r_k) ** 2
           / (1.0 + alpha * r_k ** (2 * cfg.k) * (1.0 + r_k) ** 2))
    bound = 4.0 * kappa * f_k / (1.0 + kappa * f_k) ** 2
    cond1 = bool(1.0 - cfg.omega * mu_max >= -1e-12)
    cond2 = bool(f_k <= 1.0 / kappa)
    return StabilityReport(
        angle_defect=defect, kappa=kappa, omega=cfg.omega, k=cfg.k,
        alpha=alpha, r_k=r_k, f_k=f_k, bound_rhs=bound,
        cond_spectrum_ok=cond1, cond_fk_ok=cond2,
        bound_applies=cond1 and cond2,
    )


def model_residual(g: Graph, x: np.ndarray, mu: float) -> float:
    """Residual of the mutual-reinforcement model at eigenvalue mu.

    Normalizes x and returns || xh - mu * xh - D^{-1} W xh ||_2.  Near zero
    exactly when x is close to a pencil eigenvector with eigenvalue mu.
    """
    x = np.asarray(x, dtype=np.float64)
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        raise ValueError("x must be nonzero")
    xh = x / nrm
    d = g.degree_weights
    if d.size == 0 or d.min() <= 0.0:
        raise ValueError("graph has an isolated vertex (zero weighted degree)")
    return float(np.linalg.norm(xh - mu * xh - (g.adj @ xh) / d))

"""Hypergraph bisection with algebraic-distance surrogate weights.

Pipeline: star-expand the hypergraph, relax on the bipartite model, measure
each hyperedge's spread s_h = sum over runs of (max - min) of the iterate
over the hyperedge's original vertices, hand 1/s_h to a bisector (an
external hMetis-style binary or the built-in spectral sweep), and report the
cut in the *original* weights.
"""

import shutil
import subprocess
import tempfile
import time
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .graph import Graph, Hypergraph, bipartite_expand, is_connected
from .relax import RelaxationConfig, relax
from .spectral import DENSE_CAP, pencil_eigen

__all__ = [
    "Partition",
    "HyperedgeDistances",
    "HpartReport",
    "PartitionerError",
    "ExternalPartitionResult",
    "hyperedge_distances",
    "invert_weights",
    "evaluate_cut",
    "scale_weights_to_int",
    "external_partition",
    "fallback_bisect",
    "hpart_experiment",
]

INT_WEIGHT_MAX = 10 ** 6


class PartitionerError(RuntimeError):
    """External partitioner failure, with the captured invocation context."""

    def __init__(self, message, command=None, stdout="", stderr="", workdir=None):
        super().__init__(message)
        self.command = list(command) if command else []
        self.stdout = stdout
        self.stderr = stderr
        self.workdir = workdir


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of each vertex to a part id in 0..tau-1."""

    assignment: np.ndarray
    tau: int = 2
    alpha_bal: float = 0.03

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int64)
        object.__setattr__(self, "assignment", a)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("assignment must be a nonempty 1-D array")
        if self.tau < 2:
            raise ValueError("tau must be >= 2")
        if a.min() < 0 or a.max() >= self.tau:
            raise ValueError(f"part ids must lie in 0..{self.tau - 1}")

    @property
    def nv(self) -> int:
        return self.assignment.size

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.tau)

    def is_balanced(self) -> bool:
        """Every part nonempty and no larger than (1 + alpha) * nv / tau."""
        sizes = self.sizes()
        cap = (1.0 + self.alpha_bal) * self.nv / self.tau
        return bool(sizes.min() >= 1 and sizes.max() <= cap)


@dataclass(frozen=True, eq=False)
class HyperedgeDistances:
    """Spread of the relaxed vectors over each hyperedge."""

    values: np.ndarray
    meta: dict


def hyperedge_distances(
    h: Hypergraph,
    cfg: RelaxationConfig | None = None,
    literal_alg4: bool = False,
    workers: int = 1,
) -> HyperedgeDistances:
    """s_h = sum over runs of (max - min) of x over the hyperedge's vertices.

    The relaxation runs on the bipartite model, but only original-vertex
    rows enter the spreads.  literal_alg4=True replaces the damped update
    with the plain averaging sweep (omega = 1); note the bipartite model
    makes that non-convergent, which is exactly why damping is the default.
    Rejects hypergraphs whose bipartite model is disconnected.
    """
    cfg = cfg or RelaxationConfig()
    exp = bipartite_expand(h)
    if not is_connected(exp.graph):
        raise ValueError(
            "bipartite model is disconnected; restrict to the largest "
            "component first (hypergraph_largest_component)")
    eng = replace(cfg, omega=1.0) if literal_alg4 else cfg
    iters = relax(exp.graph, eng, workers=workers)
    X = iters.vectors[: h.nv]
    values = np.empty(h.ne)
    for j, mem in enumerate(h.members):
        sub = X[mem]
        values[j] = float((sub.max(axis=0) - sub.min(axis=0)).sum())
    meta = {
        "omega": eng.omega, "k": eng.k, "R": eng.R, "seed": eng.seed,
        "literal_alg4": literal_alg4,
    }
    return HyperedgeDistances(values=values, meta=meta)


def invert_weights(d, eps: float = 1e-12) -> np.ndarray:
    """Surrogate hyperedge weights 1 / max(s_h, eps).

    Tightly clustered hyperedges (small spread) come out heavy, so a
    partitioner avoids cutting them.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    values = d.values if isinstance(d, HyperedgeDistances) else np.asarray(d, float)
    if values.size and values.min() < 0.0:
        raise ValueError("spreads must be nonnegative")
    return 1.0 / np.maximum(values, eps)


def evaluate_cut(h: Hypergraph, part) -> float:
    """Total original weight of hyperedges spanning more than one part."""
    assignment = part.assignment if isinstance(part, Partition) else \
        np.asarray(part, dtype=np.int64)
    if assignment.shape != (h.nv,):
        raise ValueError(
            f"assignment must cover all {h.nv} vertices, got shape {assignment.shape}")
    if assignment.min() < 0:
        raise ValueError("negative part id (unassigned vertex?)")
    total = 0.0
    for mem, w in zip(h.members, h.weights):
        parts = assignment[mem]
        if parts.max() != parts.min():
            total += w
    return float(total)


def scale_weights_to_int(w, top: int = INT_WEIGHT_MAX) -> np.ndarray:
    """Affinely map weights onto integers in [1, top].

    Order-preserving (monotone); an all-equal vector maps to all ones.
    External tools that require integral weights get these.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.size == 0:
        return np.zeros(0, dtype=np.int64)
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    lo, hi = float(w.min()), float(w.max())
    if hi == lo:
        return np.ones(w.size, dtype=np.int64)
    scaled = 1 + np.rint((w - lo) / (hi - lo) * (top - 1)).astype(np.int64)
    return np.clip(scaled, 1, top)


@dataclass(frozen=True, eq=False)
class ExternalPartitionResult:
    partition: Partition
    command: tuple
    stdout: str
    stderr: str
    elapsed_seconds: float
    balance_ok: bool
    kept_workdir: str | None = None


def external_partition(
    h: Hypergraph,
    weights=None,
    exe_path: str | Path = "",
    tau: int = 2,
    alpha_bal: float = 0.03,
    timeout: float = 300.0,
    extra_args: tuple = (),
) -> ExternalPartitionResult:
    """Bisect through an external hMetis-style binary.

    Writes the hypergraph (weights scaled to integers in [1, 10^6]) to a
    fresh temp directory, invokes `exe_path <file> <tau> <ubfactor>` and
    reads back `<file>.part.<tau>`.  The ubfactor is the percentage
    deviation from an even split implied by alpha_bal.  Nonzero exit,
    timeout, or an unreadable part file raise PartitionerError carrying the
    exact command and captured output; the temp directory is kept on failure
    and named in the error.
    """
    from .io import write_hgr  # local import; io imports graph only

    if not exe_path:
        raise ValueError("exe_path is required")
    exe = str(exe_path)
    if shutil.which(exe) is None and not Path(exe).exists():
        raise PartitionerError(f"partitioner binary not found: {exe}")
    w = h.weights if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape != (h.ne,):
        raise ValueError(f"expected {h.ne} weights, got shape {w.shape}")
    iw = scale_weights_to_int(w)
    ub = alpha_bal * 100.0 / tau
    ub_text = str(int(round(ub))) if abs(ub - round(ub)) < 1e-9 else f"{ub:g}"
    if int(round(ub)) < 1:
        ub_text = "1"

    workdir = Path(tempfile.mkdtemp(prefix="algdist-hpart-"))
    hgr_path = workdir / "graph.hgr"
    write_hgr(h, hgr_path, weights=iw)
    cmd = [exe, str(hgr_path), str(tau), ub_text, *map(str, extra_args)]
    t0 = time.perf_counter()
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout)
    except subprocess.TimeoutExpired as exc:
        raise PartitionerError(
            f"partitioner timed out after {timeout:g}s (workdir kept: {workdir})",
            command=cmd, stdout=exc.stdout or "", stderr=exc.stderr or "",
            workdir=str(workdir)) from exc
    elapsed = time.perf_counter() - t0
    if proc.returncode != 0:
        raise PartitionerError(
            f"partitioner exited with {proc.returncode} (workdir kept: {workdir})",
            command=cmd, stdout=proc.stdout, stderr=proc.stderr,
            workdir=str(workdir))
    part_path = Path(f"{hgr_path}.part.{tau}")
    try:
        lines = part_path.read_text().split()
    except OSError as exc:
        raise PartitionerError(
            f"partitioner wrote no part file {part_path.name} "
            f"(workdir kept: {workdir})",
            command=cmd, stdout=proc.stdout, stderr=proc.stderr,
            workdir=str(workdir)) from exc
    try:
        assignment = np.asarray([int(t) for t in lines], dtype=np.int64)
    except ValueError as exc:
        raise PartitionerError(
            f"unparsable part file (workdir kept: {workdir})",
            command=cmd, stdout=proc.stdout, stderr=proc.stderr,
            workdir=str(workdir)) from exc
    if assignment.shape != (h.nv,) or assignment.min() < 0 or \
            assignment.max() >= tau:
        raise PartitionerError(
            f"part file does not assign every vertex to 0..{tau - 1} "
            f"(workdir kept: {workdir})",
            command=cmd, stdout=proc.stdout, stderr=proc.stderr,
            workdir=str(workdir))
    part = Partition(assignment=assignment, tau=tau, alpha_bal=alpha_bal)
    balance_ok = part.is_balanced()
    if not balance_ok:
        warnings.warn("external partitioner violated the balance constraint",
                      stacklevel=2)
    shutil.rmtree(workdir, ignore_errors=True)
    return ExternalPartitionResult(
        partition=part, command=tuple(cmd), stdout=proc.stdout,
        stderr=proc.stderr, elapsed_seconds=elapsed, balance_ok=balance_ok,
        kept_workdir=None)


def fallback_bisect(
    h: Hypergraph,
    weights=None,
    alpha_bal: float = 0.03,
    cfg: RelaxationConfig | None = None,
    dense_cap: int = DENSE_CAP,
) -> Partition:
    """Built-in bisector: spectral sweep on the bipartite model.

    Sorts original vertices by the slow eigenvector of the weighted
    bipartite model (or, above dense_cap nodes, by a relaxed iterate as its
    surrogate) and picks the balance-feasible split point with the smallest
    cut *in the weights given* — the same instance an external tool would
    see.  Ties prefer the more even split, then the smaller left part.
    """
    if not (0.0 <= alpha_bal < 1.0):
        raise ValueError("alpha_bal must lie in [0, 1)")
    w = h.weights if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape != (h.ne,):
        raise ValueError(f"expected {h.ne} weights, got shape {w.shape}")
    inst = h.with_weights(w)
    exp = bipartite_expand(inst)
    if not is_connected(exp.graph):
        raise ValueError(
            "bipartite model is disconnected; restrict to the largest "
            "component first (hypergraph_largest_component)")
    if exp.graph.n <= dense_cap:
        order_values = pencil_eigen(exp.graph).vhat[: h.nv, 1]
    else:
        cfg = cfg or RelaxationConfig(k=50, R=1, center_each_sweep=True)
        iters = relax(exp.graph, replace(cfg, R=1, center_each_sweep=True))
        order_values = iters.vectors[: h.nv, 0]
    order = np.argsort(order_values, kind="stable")

    nv = h.nv
    cap = int(np.floor((1.0 + alpha_bal) * nv / 2.0))
    t_lo, t_hi = max(1, nv - cap), min(nv - 1, cap)
    if t_lo > t_hi:
        raise ValueError(
            f"no balance-feasible bisection of {nv} vertices at alpha={alpha_bal}")

    incident: list[list[int]] = [[] for _ in range(nv)]
    for j, mem in enumerate(inst.members):
        for vtx in mem:
            incident[int(vtx)].append(j)
    sizes = np.asarray([m.size for m in inst.members])
    count_left = np.zeros(inst.ne, dtype=np.int64)
    cut = 0.0
    best = None
    for t in range(1, t_hi + 1):
        vtx = int(order[t - 1])
        for j in incident[vtx]:
            count_left[j] += 1
            if sizes[j] > 1:
                if count_left[j] == 1:
                    cut += w[j]
                elif count_left[j] == sizes[j]:
                    cut -= w[j]
        if t < t_lo:
            continue
        key = (cut, abs(t - nv / 2.0), t)
        if best is None or key < best[0]:
            best = (key, t)
    t_best = best[1]
    assignment = np.ones(nv, dtype=np.int64)
    assignment[order[:t_best]] = 0
    return Partition(assignment=assignment, tau=2, alpha_bal=alpha_bal)


@dataclass(frozen=True, eq=False)
class HpartReport:
    """Outcome of the surrogate-vs-plain bisection experiment.

    Ratios are baseline/preprocessed on original-weight cuts, so values
    above 1 mean the surrogate weights found a cheaper cut.
    """

    seeds: tuple
    baseline_cut: float
    cuts: np.ndarray
    cut_ratios: np.ndarray
    mean_cut_ratio: float
    ratio_definition: str
    balance_ok: bool
    relax_seconds: float
    partition_seconds: float


def _run_partitioner(h, weights, partitioner, alpha_bal, timeout):
    if partitioner is None:
        return fallback_bisect(h, weights, alpha_bal=alpha_bal), True
    res = external_partition(h, weights, exe_path=partitioner,
                             alpha_bal=alpha_bal, timeout=timeout)
    return res.partition, res.balance_ok


def hpart_experiment(
    h: Hypergraph,
    cfg: RelaxationConfig | None = None,
    partitioner: str | Path | None = None,
    alpha_bal: float = 0.03,
    repetitions: int = 20,
    eps: float = 1e-12,
    literal_alg4: bool = False,
    timeout: float = 300.0,
    workers: int = 1,
) -> HpartReport:
    """Seeded repetitions of: relax, invert spreads, bisect; versus plain.

    partitioner=None uses the built-in sweep bisector; a path invokes the
    external binary.  Cuts are always evaluated in original weights; the
    baseline bisects the original weights directly.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    cfg = cfg or RelaxationConfig()

    t0 = time.perf_counter()
    base_part, balance_ok = _run_partitioner(h, None, partitioner, alpha_bal,
                                             timeout)
    part_sec = time.perf_counter() - t0
    base_cut = evaluate_cut(h, base_part)

    relax_sec = 0.0
    seeds, cuts = [], []
    for r in range(repetitions):
        seed = cfg.seed + r
        seeds.append(seed)
        t0 = time.perf_counter()
        d = hyperedge_distances(h, replace(cfg, seed=seed),
                                literal_alg4=literal_alg4, workers=workers)
        surrogate = invert_weights(d, eps)
        relax_sec += time.perf_counter() - t0
        t0 = time.perf_counter()
        part, bal = _run_partitioner(h, surrogate, partitioner, alpha_bal,
                                     timeout)
        part_sec += time.perf_counter() - t0
        balance_ok = balance_ok and bal
        cuts.append(evaluate_cut(h, part))

    cuts = np.asarray(cuts)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where((cuts == 0.0) & (base_cut == 0.0), 1.0,
                          base_cut / cuts)
    return HpartReport(
        seeds=tuple(seeds), baseline_cut=base_cut, cuts=cuts,
        cut_ratios=ratios, mean_cut_ratio=float(np.mean(ratios)),
        ratio_definition="baseline/preprocessed, original-weight cut",
        balance_ok=balance_ok,
        relax_seconds=relax_sec, partition_seconds=part_sec,
    )

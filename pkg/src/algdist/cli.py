"""Command-line front end: distance, match, hpart, diag, bench."""

import argparse
import math
import sys
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .distance import edge_distances
from .graph import hypergraph_largest_component, is_connected, largest_component
from .hpart import hpart_experiment
from .io import (format_float, parse_hgr, parse_matrix_market,
                 write_distance_csv)
from .matching import MATCHING_ALGOS, matching_experiment
from .relax import PRNG_NAME, RelaxationConfig, relax, stability_report, model_residual
from .spectral import DENSE_CAP, pencil_eigen, theta_curve

__all__ = ["cli_dispatch", "main", "RunRecord"]


@dataclass(frozen=True)
class RunRecord:
    """One bench CSV row.  Timing fields are the only nondeterministic ones."""

    input: str
    kind: str
    n: int
    m: int
    mean_weight_ratio: float | None
    mean_card_ratio: float | None
    mean_cut_ratio: float | None
    relax_seconds: float
    app_seconds: float
    error: str = ""

    HEADER = ("input,kind,n,m,mean_weight_ratio,mean_card_ratio,"
              "mean_cut_ratio,relax_seconds,app_seconds,error")

    def row(self) -> str:
        def num(x):
            return "" if x is None else format_float(x)
        return ",".join([
            self.input, self.kind, str(self.n), str(self.m),
            num(self.mean_weight_ratio), num(self.mean_card_ratio),
            num(self.mean_cut_ratio),
            f"{self.relax_seconds:.3f}", f"{self.app_seconds:.3f}",
            self.error,
        ])


def _parse_p(text: str) -> float:
    if text == "inf":
        return math.inf
    if text in ("1", "2"):
        return float(text)
    raise argparse.ArgumentTypeError("p must be one of 1, 2, inf")


def _common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--omega", type=float, default=0.5, help="damping factor (default 0.5)")
    sp.add_argument("--k", type=int, default=20, help="sweeps (default 20)")
    sp.add_argument("--R", type=int, default=10, help="randomly started runs (default 10)")
    sp.add_argument("--p", type=_parse_p, default=math.inf,
                    help="run-combining norm: 1, 2 or inf (default inf)")
    sp.add_argument("--seed", type=int, default=0, help="base PRNG seed (default 0)")
    sp.add_argument("--seeds", type=int, default=20,
                    help="seeded repetitions for experiments (default 20)")
    sp.add_argument("--eps", type=float, default=1e-12,
                    help="distance floor before inversion (default 1e-12)")
    sp.add_argument("--workers", type=int, default=1,
                    help="threads over runs/repetitions; results identical for any value")
    sp.add_argument("--out", type=Path, default=None, help="CSV output path")
    sp.add_argument("--largest-component", action="store_true",
                    help="restrict disconnected input to its largest component")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="algdist",
        description="Relaxation-based algebraic distances on weighted graphs, "
                    "with matching and hypergraph-bisection experiments.")
    ap.add_argument("--version", action="version", version=f"algdist {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("distance", help="per-edge algebraic distances as CSV")
    sp.add_argument("input", type=Path, help="Matrix Market graph file")
    _common_flags(sp)

    sp = sub.add_parser("match", help="matching experiment: surrogate vs plain")
    sp.add_argument("input", type=Path, help="Matrix Market graph file")
    sp.add_argument("--algo", choices=MATCHING_ALGOS, default="greedy")
    sp.add_argument("--invert-surrogate", action="store_true",
                    help="select by 1/s' (prefer weakly connected pairs)")
    _common_flags(sp)

    sp = sub.add_parser("hpart", help="bisection experiment: surrogate vs plain")
    sp.add_argument("input", type=Path, help="hMetis .hgr hypergraph file")
    sp.add_argument("--partitioner", type=Path, default=None,
                    help="external hMetis-style binary (default: built-in bisector)")
    sp.add_argument("--alpha-bal", type=float, default=0.03,
                    help="allowed imbalance (default 0.03)")
    sp.add_argument("--literal-alg4", action="store_true",
                    help="undamped averaging sweeps (omega = 1)")
    sp.add_argument("--timeout", type=float, default=300.0,
                    help="external partitioner timeout in seconds")
    _common_flags(sp)

    sp = sub.add_parser("diag", help="stability, rate curve and model residual")
    sp.add_argument("input", type=Path, help="Matrix Market graph file")
    _common_flags(sp)

    sp = sub.add_parser("bench", help="run match/hpart over a directory of inputs")
    sp.add_argument("inputs", type=Path, help="directory of .mtx and .hgr files")
    sp.add_argument("--algo", choices=MATCHING_ALGOS, default="greedy")
    sp.add_argument("--alpha-bal", type=float, default=0.03)
    sp.add_argument("--partitioner", type=Path, default=None)
    sp.add_argument("--literal-alg4", action="store_true")
    sp.add_argument("--timeout", type=float, default=300.0)
    _common_flags(sp)
    return ap


def _load_graph(args):
    g = parse_matrix_market(args.input)
    if not is_connected(g):
        if args.largest_component:
            total = g.n
            g, kept = largest_component(g)
            print(f"note: restricted to largest component "
                  f"({kept.size} of {total} vertices kept)", file=sys.stderr)
        else:
            raise ValueError(
                f"{args.input}: graph is disconnected; rerun with --largest-component")
    return g


def _cfg(args) -> RelaxationConfig:
    return RelaxationConfig(omega=args.omega, k=args.k, R=args.R, seed=args.seed)


def _cmd_distance(args) -> int:
    g = _load_graph(args)
    iters = relax(g, _cfg(args), workers=args.workers)
    field = edge_distances(g, iters, args.p)
    header = [
        ("tool", "algdist"), ("version", __version__), ("command", "distance"),
        ("input", args.input.name), ("n", g.n), ("m", g.m),
        ("omega", format_float(args.omega)), ("k", args.k), ("R", args.R),
        ("p", "inf" if math.isinf(args.p) else format_float(args.p)),
        ("seed", args.seed), ("prng", PRNG_NAME),
    ]
    if args.out is None:
        print(f"# {' '.join(f'{k}={v}' for k, v in header)}")
        print("i,j,value")
        for (u, v), x in zip(field.pairs, field.values):
            print(f"{u + 1},{v + 1},{format_float(x)}")
    else:
        write_distance_csv(field, args.out, header)
        print(f"wrote {field.values.size} distances to {args.out}")
    return 0


def _cmd_match(args) -> int:
    g = _load_graph(args)
    rep = matching_experiment(
        g, _cfg(args), algo=args.algo, p=args.p, repetitions=args.seeds,
        eps=args.eps, invert_surrogate=args.invert_surrogate,
        workers=args.workers)
    print(f"input={args.input.name} n={g.n} m={g.m} algo={rep.algo}")
    print(f"baseline: weight={format_float(rep.baseline_weight)} "
          f"cardinality={rep.baseline_cardinality}")
    print(f"mean ratios over {len(rep.seeds)} seeds "
          f"({rep.ratio_definition}): weight={rep.mean_weight_ratio:.6f} "
          f"cardinality={rep.mean_card_ratio:.6f}")
    if args.out is not None:
        lines = [f"# tool=algdist version={__version__} command=match "
                 f"input={args.input.name} algo={rep.algo} omega={args.omega} "
                 f"k={args.k} R={args.R} "
                 f"p={'inf' if math.isinf(args.p) else args.p} "
                 f"repetitions={args.seeds} base_seed={args.seed} prng={PRNG_NAME}",
                 "seed,weight,cardinality,weight_ratio,card_ratio"]
        for i, seed in enumerate(rep.seeds):
            lines.append(
                f"{seed},{format_float(rep.weights[i])},"
                f"{rep.cardinalities[i]},{format_float(rep.weight_ratios[i])},"
                f"{format_float(rep.card_ratios[i])}")
        args.out.write_text("\n".join(lines) + "\n")
        print(f"wrote per-seed rows to {args.out}")
    return 0


def _load_hypergraph(args):
    h = parse_hgr(args.input)
    from .graph import bipartite_expand
    if not is_connected(bipartite_expand(h).graph):
        if args.largest_component:
            h, vkeep, _ = hypergraph_largest_component(h)
            print(f"note: restricted to largest component ({vkeep.size} vertices kept)",
                  file=sys.stderr)
        else:
            raise ValueError(f"{args.input}: bipartite model is disconnected; "
                             "rerun with --largest-component")
    return h


def _cmd_hpart(args) -> int:
    h = _load_hypergraph(args)
    rep = hpart_experiment(
        h, _cfg(args),
        partitioner=None if args.partitioner is None else str(args.partitioner),
        alpha_bal=args.alpha_bal, repetitions=args.seeds, eps=args.eps,
        literal_alg4=args.literal_alg4, timeout=args.timeout,
        workers=args.workers)
    print(f"input={args.input.name} nv={h.nv} ne={h.ne}")
    print(f"baseline cut={format_float(rep.baseline_cut)}  balance_ok={rep.balance_ok}")
    print(f"mean cut ratio over {len(rep.seeds)} seeds "
          f"({rep.ratio_definition}): {rep.mean_cut_ratio:.6f}")
    if args.out is not None:
        lines = [f"# tool=algdist version={__version__} command=hpart "
                 f"input={args.input.name} omega={args.omega} k={args.k} "
                 f"R={args.R} repetitions={args.seeds} base_seed={args.seed} "
                 f"alpha_bal={args.alpha_bal} literal_alg4={args.literal_alg4} "
                 f"prng={PRNG_NAME}",
                 "seed,cut,cut_ratio"]
        for i, seed in enumerate(rep.seeds):
            lines.append(f"{seed},{format_float(rep.cuts[i])},"
                         f"{format_float(rep.cut_ratios[i])}")
        args.out.write_text("\n".join(lines) + "\n")
        print(f"wrote per-seed rows to {args.out}")
    return 0


def _cmd_diag(args) -> int:
    g = _load_graph(args)
    if g.n > DENSE_CAP:
        raise ValueError(f"diag needs a dense eigensolve; n={g.n} exceeds {DENSE_CAP}")
    eig = pencil_eigen(g)
    cfg = RelaxationConfig(omega=args.omega, k=max(args.k, 1), R=1,
                           seed=args.seed, keep_history=True)
    # One extra sweep so the reported pair is (x^k, x^{k+1}) for cfg.k = k.
    iters = relax(g, replace(cfg, k=cfg.k + 1), workers=1)
    x0 = relax(g, replace(cfg, k=0, keep_history=False)).vectors[:, 0]
    x_k = iters.prev_vectors[:, 0]
    rep = stability_report(g, x_k, iters.vectors[:, 0],
                           a_coeffs=eig.expand(x0), cfg=cfg, mu_max=eig.mu[-1])
    resid = model_residual(g, x_k - x_k.mean(), float(eig.mu[1]))
    print(f"input={args.input.name} n={g.n} m={g.m}")
    print(f"pencil: mu_2={eig.mu[1]:.8g} mu_max={eig.mu[-1]:.8g} "
          f"cutting_point={eig.cutting_point():.8g}")
    print(f"stability at k={cfg.k}: angle_defect={rep.angle_defect:.6g} "
          f"bound_rhs={'' if rep.bound_rhs is None else format(rep.bound_rhs, '.6g')} "
          f"applies={rep.bound_applies} kappa={rep.kappa:.6g}")
    print(f"model residual (centered iterate, mu_2): {resid:.6g}")
    grid = np.linspace(0.05, 0.95, 19) * (2.0 / eig.mu[-1])
    curve = theta_curve(eig, grid)
    if args.out is not None:
        lines = [f"# tool=algdist version={__version__} command=diag "
                 f"input={args.input.name} omega={args.omega} k={cfg.k} "
                 f"seed={args.seed}",
                 "omega,theta"]
        lines += [f"{format_float(w)},{format_float(t)}" for w, t in curve]
        args.out.write_text("\n".join(lines) + "\n")
        print(f"wrote theta curve to {args.out}")
    else:
        print("omega,theta")
        for w, t in curve:
            print(f"{format_float(w)},{format_float(t)}")
    return 0


def _cmd_bench(args) -> int:
    root = args.inputs
    if not root.is_dir():
        raise ValueError(f"{root} is not a directory")
    files = sorted([*root.glob("*.mtx"), *root.glob("*.hgr")],
                   key=lambda p: p.name)
    if not files:
        raise ValueError(f"no .mtx or .hgr files under {root}")
    records = []
    for path in files:
        t0 = time.perf_counter()
        try:
            if path.suffix == ".mtx":
                sub = argparse.Namespace(**vars(args), input=path)
                g = _load_graph(sub)
                rep = matching_experiment(
                    g, _cfg(args), algo=args.algo, p=args.p,
                    repetitions=args.seeds, eps=args.eps, workers=args.workers)
                records.append(RunRecord(
                    input=path.name, kind="graph", n=g.n, m=g.m,
                    mean_weight_ratio=rep.mean_weight_ratio,
                    mean_card_ratio=rep.mean_card_ratio, mean_cut_ratio=None,
                    relax_seconds=rep.relax_seconds,
                    app_seconds=rep.matching_seconds))
            else:
                sub = argparse.Namespace(**vars(args), input=path)
                h = _load_hypergraph(sub)
                rep = hpart_experiment(
                    h, _cfg(args),
                    partitioner=None if args.partitioner is None else str(args.partitioner),
                    alpha_bal=args.alpha_bal, repetitions=args.seeds,
                    eps=args.eps, literal_alg4=args.literal_alg4,
                    timeout=args.timeout, workers=args.workers)
                records.append(RunRecord(
                    input=path.name, kind="hypergraph", n=h.nv, m=h.ne,
                    mean_weight_ratio=None, mean_card_ratio=None,
                    mean_cut_ratio=rep.mean_cut_ratio,
                    relax_seconds=rep.relax_seconds,
                    app_seconds=rep.partition_seconds))
        except (ValueError, OSError, RuntimeError) as exc:
            print(f"bench: skipping {path.name}: {exc}", file=sys.stderr)
            records.append(RunRecord(
                input=path.name, kind="error", n=0, m=0,
                mean_weight_ratio=None, mean_card_ratio=None,
                mean_cut_ratio=None, relax_seconds=0.0,
                app_seconds=time.perf_counter() - t0, error=str(exc)[:80]))
    header = (f"# tool=algdist version={__version__} command=bench "
              f"omega={args.omega} k={args.k} R={args.R} "
              f"p={'inf' if math.isinf(args.p) else args.p} "
              f"repetitions={args.seeds} base_seed={args.seed} prng={PRNG_NAME}")
    lines = [header, RunRecord.HEADER] + [r.row() for r in records]
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        args.out.write_text(text)
        print(f"wrote {len(records)} rows to {args.out}")
    else:
        print(text, end="")
    return 0


_COMMANDS = {
    "distance": _cmd_distance,
    "match": _cmd_match,
    "hpart": _cmd_hpart,
    "diag": _cmd_diag,
    "bench": _cmd_bench,
}


def cli_dispatch(argv) -> int:
    """Parse argv (no program name) and run a subcommand; returns exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

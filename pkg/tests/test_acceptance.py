"""Acceptance gate: one test per shipped guarantee, at the stated tolerance.

Each test here pins down one externally visible promise of the package, so
`pytest -v tests/test_acceptance.py` reads as a pass/fail checklist.  The
module-level suites elsewhere cover the same code in finer grain; this file
is deliberately end-to-end.
"""

import math
import os
import time
from dataclasses import replace

import numpy as np
import pytest

from algdist import (
    RelaxationConfig,
    brute_force_matching,
    build_graph,
    dense_eigen,
    edge_distances,
    evaluate_cut,
    fallback_bisect,
    greedy_matching,
    hpart_experiment,
    iteration_matrix,
    jor_sweep,
    matching_experiment,
    normalized_distance,
    parse_hgr,
    parse_matrix_market,
    path_growing_matching,
    pencil_eigen,
    relax,
    spectral_radius,
    stability_report,
    theta_curve,
    write_hgr,
)
from algdist.cli import cli_dispatch
from algdist.generators import (
    complete_graph,
    path_graph,
    random_bipartite_graph,
    random_connected_graph,
    random_graph_with_m_edges,
    random_hypergraph,
    two_clique_bridge_hypergraph,
)


def _cosine(a, b):
    return float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))


def test_path3_trace_and_unit_normalized_distance():
    """Closed-form three-vertex path trace matches sweep-by-sweep to 1e-12."""
    t0 = time.perf_counter()
    g = path_graph(3)
    eig = pencil_eigen(g)
    assert abs(eig.sigma2(0.5) - 0.5) <= 1e-12
    sigma2 = 0.5  # closed form; the pencil eigenvalues of the 3-path are 0, 1, 2

    x = np.array([1.0, 0.0, 0.0])
    for k in range(1, 21):
        x = jor_sweep(g, x, omega=0.5)
        decay = 0.5 ** (k + 1)
        expected = np.array([0.25 + decay, 0.25, 0.25 - decay])
        assert np.max(np.abs(x - expected)) <= 1e-12
        s12 = abs(x[0] - x[1])
        assert abs(s12 - decay) <= 1e-12
        assert normalized_distance(s12, sigma2, k) == 0.5

    # same trace through the run harness and the distance pipeline
    iters = relax(g, RelaxationConfig(omega=0.5, k=20, R=1),
                  x0=np.array([1.0, 0.0, 0.0]))
    field = edge_distances(g, iters)
    shat = normalized_distance(field.values, sigma2, 20)
    assert shat[0] == 0.5 and shat[1] == 0.5
    assert time.perf_counter() - t0 < 1.0


def test_splitting_matrices_have_unit_radius_and_bipartite_jacobi_mode():
    """Damped-Jacobi and Gauss-Seidel radii equal 1; bipartite Jacobi hits -1."""
    t0 = time.perf_counter()
    for i in range(50):
        n = 20 + (i * 13) % 81
        g = random_connected_graph(n, 2 * n, seed=i)
        mu_max = pencil_eigen(g).mu[-1]
        for omega in (0.25, 0.5, 0.9 * 2.0 / mu_max):
            rho = spectral_radius(iteration_matrix(g, "jor", omega))
            assert abs(rho - 1.0) <= 1e-8
        rho = spectral_radius(iteration_matrix(g, "gs"))
        assert abs(rho - 1.0) <= 1e-8
    for i in range(10):
        g = random_bipartite_graph(6 + i, 5 + i, extra_edges=3 * i, seed=i)
        eigvals, _ = dense_eigen(iteration_matrix(g, "jac"))
        assert np.abs(eigvals + 1.0).min() <= 1e-8
    assert time.perf_counter() - t0 < 30.0


def test_iterates_settle_at_degree_weighted_mean():
    """Long runs flatten: edge gaps vanish and x approaches c * ones.

    c is the degree-weighted mean of the start vector, so it is nonzero for
    a generic start and exactly zero when the start lies in the range of
    I - H (no component along the constant mode).
    """
    for i in range(10):
        n = 30 + 10 * (i % 7)
        g = random_connected_graph(n, 3 * n, seed=i)
        eig = pencil_eigen(g)
        # curated for settling: non-constant modes decay below 1e-8 by k=1e4
        assert eig.sigma2(0.5) <= 0.9979

        rng = np.random.default_rng(99 + i)
        x0 = rng.uniform(-0.5, 0.5, size=n) + 0.3
        d = g.degree_weights
        c = float(d @ x0 / d.sum())
        assert abs(c) > 1e-3
        iters = relax(g, RelaxationConfig(k=10_000, R=1), x0=x0)
        assert np.abs(iters.vectors[:, 0] - c).max() <= 1e-6
        assert edge_distances(g, iters).values.max() <= 1e-6

        y = rng.uniform(-0.5, 0.5, size=n)
        x0_range = y - iteration_matrix(g, "jor", 0.5) @ y
        iters = relax(g, RelaxationConfig(k=10_000, R=1), x0=x0_range)
        assert np.abs(iters.vectors[:, 0]).max() <= 1e-6
        assert edge_distances(g, iters).values.max() <= 1e-6


def test_edge_distance_direction_matches_second_pencil_vector():
    """Normalized distances line up with the slowest non-constant mode.

    k is chosen per graph so the subdominant ratio theta satisfies
    theta**k <= 1e-4; graphs with a degenerate ratio limit are skipped with
    a printed reason, as are pathological k requirements.
    """
    pool = [("complete6", lambda: complete_graph(6))]
    pool += [
        (f"rand{idx}",
         lambda idx=idx: random_connected_graph(30 + 6 * (idx % 9),
                                                30 + 6 * (idx % 9),
                                                seed=3000 + idx))
        for idx in range(200)
    ]
    accepted = 0
    for name, make in pool:
        if accepted == 20:
            break
        g = make()
        eig = pencil_eigen(g)
        if eig.ratio_limit_degenerate():
            print(f"skip {name}: degenerate ratio limit")
            continue
        theta = theta_curve(eig, [0.5])[0][1]
        if not math.isfinite(theta) or theta >= 1.0:
            print(f"skip {name}: no decaying subdominant ratio")
            continue
        k = max(1, math.ceil(math.log(1e-4) / math.log(theta)))
        if k > 20_000:
            print(f"skip {name}: needs k={k} sweeps")
            continue

        # a generic start: bump the seed if the mode-2 coefficient is tiny
        seed = 7
        while True:
            x0 = relax(g, RelaxationConfig(k=0, R=1, seed=seed)).vectors[:, 0]
            coeffs = eig.expand(x0)
            if abs(coeffs[1]) >= 0.02 * np.linalg.norm(coeffs):
                break
            seed += 1

        v2 = eig.jor_eigs(0.5)[1][:, 1]
        gaps = np.abs(v2[g.edge_u] - v2[g.edge_v])
        sigma2 = eig.sigma2(0.5)
        if k * math.log(sigma2) > math.log(1e-280):
            # full pipeline; centering keeps the shrinking signal above
            # the rounding floor of the constant mode
            iters = relax(g, RelaxationConfig(k=k, R=1, seed=seed,
                                              center_each_sweep=True))
            vec = normalized_distance(edge_distances(g, iters).values,
                                      sigma2, k)
        else:
            # sigma2**k underflows; rescale per sweep (cosine is
            # scale-invariant, so this changes nothing it measures)
            x = x0.copy()
            d = g.degree_weights
            for _ in range(k):
                x = jor_sweep(g, x)
                x -= d @ x / d.sum()
                x /= np.abs(x).max()
            vec = np.abs(x[g.edge_u] - x[g.edge_v])
        assert _cosine(vec, gaps) >= 0.999, name
        accepted += 1
    assert accepted == 20


def test_successive_angle_defect_respects_bound_and_decays_on_corpus(corpus):
    """The a-priori angle bound holds whenever its preconditions do.

    On the bundled corpus the defect between sweeps 50 and 51 must drop
    below 1e-3; the raw values are printed for the record.
    """
    tested = applied = 0
    for i in range(8):
        n = 10 + 6 * i
        g = random_connected_graph(n, 2 * n, seed=100 + i)
        eig = pencil_eigen(g)
        rng = np.random.default_rng(40 + i)
        x0 = rng.uniform(-0.5, 0.5, size=n) + 0.3
        coeffs = eig.expand(x0)
        for k in (1, 2, 5, 10, 30):
            cfg = RelaxationConfig(k=k, R=1, keep_history=True)
            iters = relax(g, replace(cfg, k=k + 1), x0=x0)
            rep = stability_report(g, iters.prev_vectors[:, 0],
                                   iters.vectors[:, 0], a_coeffs=coeffs,
                                   cfg=cfg, mu_max=eig.mu[-1])
            tested += 1
            if rep.bound_applies:
                applied += 1
                assert rep.angle_defect <= rep.bound_rhs + 1e-12
    assert applied >= tested // 2

    for path in corpus.mtx:
        g = parse_matrix_market(path)
        iters = relax(g, RelaxationConfig(k=51, R=1, seed=3,
                                          keep_history=True))
        rep = stability_report(g, iters.prev_vectors[:, 0],
                               iters.vectors[:, 0])
        print(f"{path.name}: angle defect at k=50 = {rep.angle_defect:.3e}")
        assert rep.angle_defect <= 1e-3


def test_matching_heuristics_are_half_optimal_on_exhaustive_suite():
    """Greedy and path-growing stay within 1/2 of the brute-force optimum."""
    for i in range(200):
        g = random_connected_graph(4 + i % 6, i % 9, seed=i)
        edge_set = set(zip(g.edge_u.tolist(), g.edge_v.tolist()))
        assert len(edge_set) <= 20
        best = brute_force_matching(g).weight_original
        for algo in (greedy_matching, path_growing_matching):
            m = algo(g)
            seen = [v for e in m.edges for v in e]
            assert len(seen) == len(set(seen))
            assert all(e in edge_set for e in m.edges)
            assert m.weight_original >= 0.5 * best - 1e-12
            assert m.weight_original <= best + 1e-12

    k3 = build_graph([(1, 2, 3.0), (1, 3, 2.0), (2, 3, 1.0)])
    for algo in (greedy_matching, path_growing_matching,
                 brute_force_matching):
        assert algo(k3).weight_original == 3.0


def test_matching_harness_protocol_on_corpus(corpus):
    """20 seeded runs per corpus graph at default settings, deterministic."""
    defaults = RelaxationConfig()
    assert (defaults.omega, defaults.k, defaults.R) == (0.5, 20, 10)
    for path in corpus.mtx:
        g = parse_matrix_market(path)
        m = g.edge_u.size
        assert 1_000 <= m <= 100_000
        rep = matching_experiment(g)
        assert rep.p == math.inf
        assert len(rep.seeds) == 20
        assert np.all(np.isfinite(rep.weight_ratios))
        assert rep.mean_weight_ratio == pytest.approx(
            float(rep.weight_ratios.mean()))
        again = matching_experiment(g)
        assert np.array_equal(rep.weights, again.weights)
        print(f"{path.name}: m={m} mean weight ratio "
              f"{rep.mean_weight_ratio:.4f}")


def test_hypergraph_cut_oracle_bridge_roundtrip_and_drivers(
        corpus, stub_partitioner, tmp_path):
    """Cut evaluation matches exhaustive enumeration; drivers run end-to-end."""
    bridge = two_clique_bridge_hypergraph(6)
    instances = [random_hypergraph(nv, ne, seed=s)
                 for nv, ne, s in ((4, 3, 0), (6, 5, 1), (8, 7, 2),
                                   (10, 9, 3), (12, 6, 4))]
    instances.append(bridge)
    for h in instances:
        assert h.nv <= 12
        assign = (np.arange(2 ** h.nv)[:, None] >> np.arange(h.nv)) & 1
        brute = np.zeros(2 ** h.nv)
        for mem, w in zip(h.members, h.weights):
            cols = assign[:, mem]
            brute += w * (cols.min(axis=1) != cols.max(axis=1))
        got = np.array([evaluate_cut(h, row) for row in assign])
        assert np.array_equal(got, brute)

    part = fallback_bisect(bridge, None)
    assert evaluate_cut(bridge, part) == 1.0

    for path in corpus.hgr:
        h = parse_hgr(path)
        copy = tmp_path / path.name
        write_hgr(h, copy)
        assert copy.read_bytes() == path.read_bytes()

    rep = hpart_experiment(bridge)
    assert len(rep.seeds) == 20
    assert np.all(np.isfinite(rep.cut_ratios))
    assert rep.balance_ok

    rep = hpart_experiment(random_hypergraph(14, 8, seed=2),
                           partitioner=stub_partitioner)
    assert len(rep.seeds) == 20
    assert np.all(np.isfinite(rep.cuts))


@pytest.mark.perf
@pytest.mark.skipif(not os.environ.get("ALGDIST_PERF"),
                    reason="opt-in: set ALGDIST_PERF=1")
def test_relaxation_wall_clock_scales_linearly():
    """Doubling the edge count at fixed k, R at most 2.5x the wall clock."""
    t_start = time.perf_counter()
    cfg = RelaxationConfig(k=20, R=10, seed=0)
    medians = []
    for i, m in enumerate((100_000, 200_000, 400_000, 800_000)):
        g = random_graph_with_m_edges(m, avg_degree=10.0, seed=9000 + i)
        relax(g, replace(cfg, k=2))  # warm caches before timing
        samples = []
        for _ in range(5):
            t0 = time.perf_counter()
            relax(g, cfg)
            samples.append(time.perf_counter() - t0)
        medians.append(float(np.median(samples)))
    print("medians:", ["%.3f s" % s for s in medians])
    for small, large in zip(medians, medians[1:]):
        assert large <= 2.5 * small
    assert time.perf_counter() - t_start < 300.0


def test_distance_artifacts_identical_across_worker_counts(tmp_path):
    """Distance CSVs are byte-identical no matter how many workers ran."""
    from algdist import write_matrix_market

    for trial in range(10):
        g = random_connected_graph(40 + 3 * trial, 60 + 2 * trial,
                                   seed=500 + trial)
        mtx = tmp_path / f"t{trial}.mtx"
        write_matrix_market(g, mtx)
        serial = tmp_path / f"t{trial}_serial.csv"
        parallel = tmp_path / f"t{trial}_parallel.csv"
        base = ["distance", str(mtx), "--seed", str(trial)]
        assert cli_dispatch(base + ["--workers", "1", "--out",
                                    str(serial)]) == 0
        assert cli_dispatch(base + ["--workers", "4", "--out",
                                    str(parallel)]) == 0
        assert serial.read_bytes() == parallel.read_bytes()

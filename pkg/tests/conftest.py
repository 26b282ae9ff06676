"""Shared fixtures: hypothesis profile and the synthetic benchmark corpus."""

from __future__ import annotations

import dataclasses
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from algdist.generators import (
    random_graph_with_m_edges,
    random_hypergraph,
    two_clique_bridge_hypergraph,
)
from algdist.io import write_hgr, write_matrix_market

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# Edge counts for the bundled synthetic graphs; spans three decades so the
# experiment harness sees both toy and mid-size inputs.
CORPUS_EDGE_COUNTS = (1_000, 2_500, 6_000, 15_000, 40_000)


@dataclasses.dataclass(frozen=True)
class Corpus:
    root: Path
    mtx: tuple[Path, ...]
    hgr: tuple[Path, ...]


@pytest.fixture(scope="session")
def corpus(tmp_path_factory) -> Corpus:
    root = tmp_path_factory.mktemp("corpus")
    mtx = []
    for i, m in enumerate(CORPUS_EDGE_COUNTS):
        g = random_graph_with_m_edges(m, avg_degree=10.0, seed=1000 + i)
        path = root / f"rand_m{m}.mtx"
        write_matrix_market(g, path, comment=f"synthetic corpus graph, m={m}")
        mtx.append(path)
    hgr = []
    hypers = [
        random_hypergraph(40, 60, seed=7),
        random_hypergraph(26, 30, seed=8),
        two_clique_bridge_hypergraph(6),
    ]
    for i, h in enumerate(hypers):
        path = root / f"hyper_{i}.hgr"
        write_hgr(h, path)
        hgr.append(path)
    return Corpus(root=root, mtx=tuple(mtx), hgr=tuple(hgr))


@pytest.fixture(scope="session")
def stub_partitioner(tmp_path_factory) -> Path:
    """Executable stand-in for an external bisector: contiguous even split."""
    root = tmp_path_factory.mktemp("stub")
    path = root / "stub_bisect.py"
    path.write_text(
        "#!/usr/bin/env python3\n"
        "import sys\n"
        "hgr, tau = sys.argv[1], int(sys.argv[2])\n"
        "with open(hgr) as f:\n"
        "    ne, nv = map(int, f.readline().split()[:2])\n"
        "half = nv // 2\n"
        "with open(f'{hgr}.part.{tau}', 'w') as f:\n"
        "    f.write(''.join('0\\n' if i < half else '1\\n' for i in range(nv)))\n"
    )
    path.chmod(0o755)
    return path

"""Write the seeded synthetic benchmark corpus to a directory.

The instances (sizes and seeds) are the same ones the test suite builds
internally, so numbers from the scripts line up with the suite's printouts.
"""

import argparse
import sys
from pathlib import Path

from algdist.generators import (
    random_graph_with_m_edges,
    random_hypergraph,
    two_clique_bridge_hypergraph,
)
from algdist.io import write_hgr, write_matrix_market

EDGE_COUNTS = (1_000, 2_500, 6_000, 15_000, 40_000)


def build_corpus(root: Path) -> list[Path]:
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for i, m in enumerate(EDGE_COUNTS):
        g = random_graph_with_m_edges(m, avg_degree=10.0, seed=1000 + i)
        path = root / f"rand_m{m}.mtx"
        write_matrix_market(g, path, comment=f"synthetic corpus graph, m={m}")
        written.append(path)
    hypers = [
        random_hypergraph(40, 60, seed=7),
        random_hypergraph(26, 30, seed=8),
        two_clique_bridge_hypergraph(6),
    ]
    for i, h in enumerate(hypers):
        path = root / f"hyper_{i}.hgr"
        write_hgr(h, path)
        written.append(path)
    return written


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", type=Path, default=Path("corpus"),
                    help="output directory (default ./corpus)")
    args = ap.parse_args(argv)
    for path in build_corpus(args.dir):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Run the matching and bisection ratio experiments over the corpus.

Builds the synthetic corpus if it is not there yet, then drives the `bench`
subcommand with the experiment defaults (omega=1/2, k=20, R=10, p=inf,
20 seeded repetitions per input) and leaves one CSV row per input file.
"""

import argparse
import sys
from pathlib import Path

from algdist.cli import cli_dispatch

from make_corpus import build_corpus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus-dir", type=Path, default=Path("corpus"),
                    help="corpus location (default ./corpus; built if empty)")
    ap.add_argument("--out", type=Path, default=Path("ratio_results.csv"),
                    help="results CSV (default ./ratio_results.csv)")
    ap.add_argument("--seeds", type=int, default=20,
                    help="seeded repetitions per input (default 20)")
    ap.add_argument("--workers", type=int, default=1,
                    help="threads for the relaxation runs (default 1)")
    args = ap.parse_args(argv)

    if not any(args.corpus_dir.glob("*.mtx")):
        print(f"building corpus under {args.corpus_dir}", file=sys.stderr)
        build_corpus(args.corpus_dir)

    return cli_dispatch([
        "bench", str(args.corpus_dir),
        "--seeds", str(args.seeds),
        "--workers", str(args.workers),
        "--out", str(args.out),
    ])


if __name__ == "__main__":
    sys.exit(main())

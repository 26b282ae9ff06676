"""Interchange formats: Matrix Market graphs, hMetis hypergraphs, CSV output.

All files speak 1-based vertex ids; conversion to the library's 0-based
indices happens here and nowhere else.  Parse errors carry the offending
line number.
"""

import math
from pathlib import Path

import numpy as np

from .graph import Graph, Hypergraph, build_graph, build_hypergraph

__all__ = [
    "ParseError",
    "parse_matrix_market",
    "write_matrix_market",
    "parse_hgr",
    "write_hgr",
    "write_distance_csv",
    "format_float",
]


class ParseError(ValueError):
    """Malformed input file; `line` is 1-based."""

    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


def _data_lines(text: str):
    """Yield (line_number, stripped line) skipping blanks and % comments."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield no, line


def parse_matrix_market(path) -> Graph:
    """Read a coordinate Matrix Market file as an undirected weighted graph.

    Accepts real/integer/pattern fields, general or symmetric symmetry.
    General matrices are symmetrized as (A + A^T)/2 on the union pattern;
    entry values contribute their absolute value; pattern entries weigh 1;
    diagonal entries (self-loops) are dropped.
    """
    path = Path(path)
    text = path.read_text()
    first = text.splitlines()[0] if text else ""
    tokens = first.lower().split()
    if len(tokens) < 4 or tokens[0] != "%%matrixmarket":
        raise ParseError(path, 1, "missing %%MatrixMarket banner")
    if tokens[1] != "matrix" or tokens[2] != "coordinate":
        raise ParseError(path, 1,
                         f"only 'matrix coordinate' files supported, got "
                         f"'{tokens[1]} {tokens[2]}'")
    field = tokens[3]
    if field not in ("real", "integer", "pattern"):
        raise ParseError(path, 1, f"unsupported field '{field}'")
    symmetry = tokens[4] if len(tokens) > 4 else "general"
    if symmetry not in ("general", "symmetric"):
        raise ParseError(path, 1, f"unsupported symmetry '{symmetry}'")
    pattern = field == "pattern"

    lines = _data_lines(text)
    try:
        no, size_line = next(lines)
    except StopIteration:
        raise ParseError(path, 1, "missing size line") from None
    parts = size_line.split()
    if len(parts) != 3:
        raise ParseError(path, no, f"size line needs 'rows cols nnz', got {size_line!r}")
    try:
        nrows, ncols, nnz = (int(t) for t in parts)
    except ValueError:
        raise ParseError(path, no, f"non-integer size line {size_line!r}") from None
    if nrows != ncols:
        raise ParseError(path, no, f"matrix must be square, got {nrows}x{ncols}")
    if nrows < 1:
        raise ParseError(path, no, "empty matrix")

    want = 2 if pattern else 3
    iv, jv, wv = [], [], []
    count = 0
    dropped_diagonal = 0
    for no, line in lines:
        parts = line.split()
        if len(parts) < want:
            raise ParseError(path, no, f"entry needs {want} fields, got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            val = 1.0 if pattern else float(parts[2])
        except ValueError:
            raise ParseError(path, no, f"unparsable entry {line!r}") from None
        count += 1
        if count > nnz:
            raise ParseError(path, no, f"more than the declared {nnz} entries")
        if not (1 <= i <= nrows and 1 <= j <= nrows):
            raise ParseError(path, no, f"index ({i}, {j}) outside 1..{nrows}")
        if not math.isfinite(val):
            raise ParseError(path, no, f"non-finite value in {line!r}")
        if i == j:
            dropped_diagonal += 1
            continue
        val = abs(val)
        if symmetry == "symmetric":
            iv.append(i); jv.append(j); wv.append(val)
        else:
            # build_graph already mirrors: one half-weight contribution per
            # entry, so (i,j) and (j,i) entries sum to (|a_ij| + |a_ji|)/2
            iv.append(i); jv.append(j); wv.append(0.5 * val)
    if count != nnz:
        raise ParseError(path, no if count else 1,
                         f"declared {nnz} entries, found {count}")
    edges = np.column_stack([iv, jv, wv]) if iv else np.zeros((0, 3))
    return build_graph(edges, n=nrows)


def write_matrix_market(g: Graph, path, comment: str = "") -> None:
    """Write a graph as a symmetric real coordinate Matrix Market file."""
    path = Path(path)
    lines = ["%%MatrixMarket matrix coordinate real symmetric"]
    if comment:
        lines.extend(f"% {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.n} {g.m}")
    u, v, w = g.edge_u, g.edge_v, g.edge_w
    # symmetric storage keeps row >= col, so emit (v, u)
    lines.extend(f"{vv + 1} {uu + 1} {format_float(ww)}"
                 for uu, vv, ww in zip(u, v, w))
    path.write_text("\n".join(lines) + "\n")


def parse_hgr(path) -> Hypergraph:
    """Read an hMetis hypergraph file.

    Header is '<ne> <nv> [fmt]' with fmt absent/0 (unit weights) or 1
    (leading integer weight per hyperedge line).  Vertex ids are 1-based;
    repeats within a line, out-of-range ids, or a line-count mismatch are
    parse errors.  '%' comment lines are skipped.
    """
    path = Path(path)
    lines = _data_lines(path.read_text())
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError(path, 1, "empty file") from None
    parts = header.split()
    if len(parts) not in (2, 3):
        raise ParseError(path, no, f"header needs '<ne> <nv> [fmt]', got {header!r}")
    try:
        ne, nv = int(parts[0]), int(parts[1])
        fmt = int(parts[2]) if len(parts) == 3 else 0
    except ValueError:
        raise ParseError(path, no, f"non-integer header {header!r}") from None
    if fmt not in (0, 1):
        raise ParseError(path, no,
                         f"fmt {fmt} unsupported (only 0 or 1: hyperedge weights)")
    if ne < 1 or nv < 1:
        raise ParseError(path, no, "ne and nv must be positive")

    hyperedges = []
    count = 0
    for no, line in lines:
        count += 1
        if count > ne:
            raise ParseError(path, no, f"more than the declared {ne} hyperedges")
        parts = line.split()
        try:
            nums = [int(t) for t in parts]
        except ValueError:
            raise ParseError(path, no, f"non-integer token in {line!r}") from None
        if fmt == 1:
            if len(nums) < 2:
                raise ParseError(path, no, "weighted line needs a weight and a vertex")
            w, ids = nums[0], nums[1:]
            if w < 0:
                raise ParseError(path, no, f"negative hyperedge weight {w}")
        else:
            w, ids = 1, nums
        if not ids:
            raise ParseError(path, no, "empty hyperedge")
        if min(ids) < 1 or max(ids) > nv:
            raise ParseError(path, no, f"vertex id outside 1..{nv} in {line!r}")
        if len(set(ids)) != len(ids):
            raise ParseError(path, no, f"repeated vertex id in {line!r}")
        hyperedges.append((ids, float(w)))
    if count != ne:
        raise ParseError(path, no if count else 1,
                         f"declared {ne} hyperedges, found {count}")
    return build_hypergraph(nv, hyperedges)


def write_hgr(h: Hypergraph, path, weights=None) -> None:
    """Write an hMetis hypergraph file (always weighted, fmt 1).

    Weights default to the hypergraph's own and must be integral; use
    hpart.scale_weights_to_int first for real-valued surrogates.  Output is
    ASCII, one hyperedge per line, members ascending 1-based, newline
    terminated.
    """
    path = Path(path)
    w = h.weights if weights is None else np.asarray(weights)
    if w.shape != (h.ne,):
        raise ValueError(f"expected {h.ne} weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w != np.rint(w)):
        raise ValueError("hgr weights must be integral (scale_weights_to_int)")
    iw = w.astype(np.int64)
    if iw.size and iw.min() < 0:
        raise ValueError("hgr weights must be nonnegative")
    lines = [f"{h.ne} {h.nv} 1"]
    for mem, wi in zip(h.members, iw):
        lines.append(" ".join([str(int(wi))] + [str(int(v) + 1) for v in mem]))
    path.write_text("\n".join(lines) + "\n")


def format_float(x: float) -> str:
    """Canonical shortest-exact float text, stable across platforms."""
    return format(float(x), ".17g")


def write_distance_csv(field, path, header_pairs) -> None:
    """Write per-edge distances as CSV with a self-describing comment header.

    header_pairs is an ordered iterable of (key, value); vertex ids are
    emitted 1-based.  Output depends only on the field and the header, never
    on worker count or wall-clock, so reruns are byte-identical.
    """
    path = Path(path)
    parts = [f"# {' '.join(f'{k}={v}' for k, v in header_pairs)}", "i,j,value"]
    parts.extend(
        f"{int(u) + 1},{int(v) + 1},{format_float(x)}"
        for u, v, x in zip(field.pairs[:, 0], field.pairs[:, 1], field.values))
    path.write_text("\n".join(parts) + "\n")

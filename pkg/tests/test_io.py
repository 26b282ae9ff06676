"""File formats: Matrix Market graphs, hMetis hypergraphs, distance CSVs."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algdist import (
    DistanceField,
    ParseError,
    build_graph,
    build_hypergraph,
    format_float,
    parse_hgr,
    parse_matrix_market,
    write_distance_csv,
    write_hgr,
    write_matrix_market,
)
from algdist.generators import random_connected_graph, random_hypergraph


def _mtx(tmp_path, text):
    path = tmp_path / "m.mtx"
    path.write_text(text)
    return path


def test_parse_symmetric_pattern(tmp_path):
    g = parse_matrix_market(
        _mtx(
            tmp_path,
            "%%MatrixMarket matrix coordinate pattern symmetric\n"
            "% a comment\n"
            "3 3 2\n"
            "2 1\n"
            "3 2\n",
        )
    )
    assert g.n == 3 and g.m == 2
    assert g.edge_w.tolist() == [1.0, 1.0]


def test_parse_real_symmetric_takes_absolute_values(tmp_path):
    g = parse_matrix_market(
        _mtx(
            tmp_path,
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "3 3 3\n"
            "2 1 -4.0\n"
            "3 1 0.5\n"
            "3 3 9.0\n",  # diagonal dropped
        )
    )
    assert g.m == 2
    assert g.edge_w.tolist() == [4.0, 0.5]


def test_parse_general_averages_mirrored_magnitudes(tmp_path):
    g = parse_matrix_market(
        _mtx(
            tmp_path,
            "%%MatrixMarket matrix coordinate real general\n"
            "3 3 3\n"
            "1 2 4.0\n"
            "2 1 -2.0\n"
            "1 3 6.0\n",
        )
    )
    # paired entries average |4| and |-2|; the lone entry contributes half
    assert g.edge_w.tolist() == [3.0, 3.0]


def test_parse_integer_field(tmp_path):
    g = parse_matrix_market(
        _mtx(
            tmp_path,
            "%%MatrixMarket matrix coordinate integer symmetric\n"
            "2 2 1\n"
            "2 1 7\n",
        )
    )
    assert g.edge_w.tolist() == [7.0]


@pytest.mark.parametrize(
    "text,line",
    [
        ("%%Nonsense banner\n2 2 1\n2 1 1.0\n", 1),
        ("%%MatrixMarket matrix coordinate complex symmetric\n2 2 1\n2 1 1 0\n", 1),
        ("%%MatrixMarket matrix array real general\n2 2\n1.0\n", 1),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 3 1\n2 1 1.0\n", 2),
        ("%%MatrixMarket matrix coordinate real symmetric\nx y z\n", 2),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 1.0\n", None),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 1.0\n2 1 2.0\n", 4),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1\n", 3),
        ("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n5 1 1.0\n", 3),
    ],
)
def test_parse_matrix_market_errors_carry_line_numbers(tmp_path, text, line):
    with pytest.raises(ParseError) as ei:
        parse_matrix_market(_mtx(tmp_path, text))
    if line is not None:
        assert ei.value.line == line
    assert str(ei.value.path).endswith("m.mtx")


def test_write_matrix_market_layout(tmp_path):
    g = build_graph([(1, 2, 0.5), (2, 3, 1.25)])
    path = tmp_path / "g.mtx"
    write_matrix_market(g, path, comment="made for a test")
    assert path.read_text() == (
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "% made for a test\n"
        "3 3 2\n"
        "2 1 0.5\n"
        "3 2 1.25\n"
    )


def test_matrix_market_round_trip_is_exact(tmp_path):
    g = random_connected_graph(25, 40, seed=11)
    path = tmp_path / "g.mtx"
    write_matrix_market(g, path)
    g2 = parse_matrix_market(path)
    assert g2.n == g.n and g2.m == g.m
    assert np.array_equal(g2.edge_u, g.edge_u)
    assert np.array_equal(g2.edge_v, g.edge_v)
    assert np.array_equal(g2.edge_w, g.edge_w)  # bitwise via 17 digits


def test_matrix_market_round_trip_awkward_floats(tmp_path):
    g = build_graph(
        [(1, 2, np.pi), (2, 3, 1.0 / 3.0), (1, 3, 1e-300), (3, 4, 1e300)]
    )
    path = tmp_path / "g.mtx"
    write_matrix_market(g, path)
    assert np.array_equal(parse_matrix_market(path).edge_w, g.edge_w)


def test_parse_hgr_sample_and_formats(tmp_path):
    path = tmp_path / "h.hgr"
    path.write_text("2 3 1\n5 1 2\n1 2 3\n")
    h = parse_hgr(path)
    assert h.nv == 3 and h.ne == 2
    assert h.weights.tolist() == [5.0, 1.0]
    assert [m.tolist() for m in h.members] == [[0, 1], [1, 2]]

    plain = tmp_path / "p.hgr"
    plain.write_text("% header comment\n2 3\n1 2\n2 3\n")
    h0 = parse_hgr(plain)
    assert h0.weights.tolist() == [1.0, 1.0]

    fmt0 = tmp_path / "z.hgr"
    fmt0.write_text("1 2 0\n1 2\n")
    assert parse_hgr(fmt0).weights.tolist() == [1.0]


@pytest.mark.parametrize(
    "text,line",
    [
        ("junk\n", 1),
        ("1 2 7\n1 1 2\n", 1),  # unknown fmt
        ("2 2 0\n1 2\n", None),  # missing hyperedge line
        ("1 2 0\n1 2\n1 2\n", 3),  # extra hyperedge line
        ("1 2 0\n1 3\n", 2),  # vertex above nv
        ("1 2 0\n0 1\n", 2),  # vertex below 1
        ("1 2 0\n1 1\n", 2),  # repeated vertex
        ("1 2 1\n5\n", 2),  # weight but no vertices
        ("1 2 1\n-1 1 2\n", 2),  # negative weight
    ],
)
def test_parse_hgr_errors_carry_line_numbers(tmp_path, text, line):
    path = tmp_path / "bad.hgr"
    path.write_text(text)
    with pytest.raises(ParseError) as ei:
        parse_hgr(path)
    if line is not None:
        assert ei.value.line == line


def test_write_hgr_byte_round_trip(tmp_path):
    h = random_hypergraph(15, 9, seed=6)
    path = tmp_path / "h.hgr"
    write_hgr(h, path)
    text = path.read_text()
    assert text.startswith(f"{h.ne} {h.nv} 1\n")
    h2 = parse_hgr(path)
    path2 = tmp_path / "h2.hgr"
    write_hgr(h2, path2)
    assert path2.read_bytes() == path.read_bytes()


def test_write_hgr_rejects_fractional_weights(tmp_path):
    h = build_hypergraph(3, [((1, 2), 1.5)])
    with pytest.raises(ValueError):
        write_hgr(h, tmp_path / "h.hgr")
    # an explicit integral override is fine
    write_hgr(h, tmp_path / "h.hgr", weights=np.array([2.0]))
    assert parse_hgr(tmp_path / "h.hgr").weights.tolist() == [2.0]


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_float_round_trips(x):
    text = format_float(x)
    assert float(text) == x
    assert "\n" not in text and " " not in text


def test_write_distance_csv_layout(tmp_path):
    field = DistanceField(
        pairs=np.array([[0, 1], [1, 2]]),
        values=np.array([0.25, 1.0 / 3.0]),
    )
    path = tmp_path / "d.csv"
    write_distance_csv(field, path, [("k", 3), ("omega", 0.5)])
    lines = path.read_text().splitlines()
    assert lines[0] == "# k=3 omega=0.5"
    assert lines[1] == "i,j,value"
    assert lines[2] == "1,2,0.25"
    i, j, v = lines[3].split(",")
    assert (i, j) == ("2", "3")
    assert float(v) == 1.0 / 3.0

import io
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from blocktest.config import DetectConfig
from blocktest.detect import detect_communities
from blocktest.graph import Graph
from blocktest.io import (
    DataError,
    DatasetUnavailable,
    format_edgelist,
    format_labels,
    load_dataset,
    read_edgelist,
    read_labels,
    read_partition_file,
    read_result,
    result_document,
    write_result,
)


def test_read_edgelist_labels_and_comments():
    text = "# header\nb a\n\n a  c \n# mid\nd\n"
    g, labels = read_edgelist(io.StringIO(text))
    assert labels == ["b", "a", "c", "d"]
    assert g.n == 4 and g.edges.tolist() == [[0, 1], [1, 2]]


@pytest.mark.parametrize(
    "text, where",
    [("a b\nb a\n", "line 2"), ("a b\nc c\n", "line 2"), ("a b c\n", "line 1"), ("# x\n\na b\na b\n", "line 4")],
)
def test_read_edgelist_errors_name_the_line(text, where):
    with pytest.raises(DataError, match=where):
        read_edgelist(io.StringIO(text))


def test_missing_file():
    with pytest.raises(DataError):
        read_edgelist("/nonexistent/graph.edgelist")


@given(graphs(max_n=30))
def test_round_trip_is_byte_identical(g):
    text = format_edgelist(g, comments=["a comment"])
    h, labels = read_edgelist(io.StringIO(text))
    assert h == g and labels == [str(i) for i in range(g.n)]
    assert format_edgelist(h, labels, comments=["a comment"]) == text


def test_isolated_vertices_survive():
    g = Graph(5, [(1, 3)])
    h, labels = read_edgelist(io.StringIO(format_edgelist(g)))
    assert h == g and labels == ["0", "1", "2", "3", "4"]


def test_labels_file():
    vl = ["x", "y", "z"]
    assert read_labels(io.StringIO("z B\nx A\ny A\n"), vl).tolist() == [0, 0, 1]
    with pytest.raises(DataError, match="missing"):
        read_labels(io.StringIO("x A\ny A\n"), vl)
    with pytest.raises(DataError):
        read_labels(io.StringIO("x A\ny A\nz B\nw C\n"), vl)
    with pytest.raises(DataError, match="line 2"):
        read_labels(io.StringIO("x A\nx B\n"), vl)
    assert format_labels([0, 1], ["p", "q"], ["c"]) == "# c\np 0\nq 1\n"


def test_bundled_karate():
    g, labels, truth = load_dataset("karate")
    assert g.n == 34 and g.m == 78
    assert labels == [str(i) for i in range(34)]
    assert truth.max() == 1 and truth[0] != truth[33]
    assert np.bincount(truth).tolist() == [17, 17]


def test_unknown_and_unavailable_datasets(monkeypatch, tmp_path):
    with pytest.raises(DataError):
        load_dataset("dolphins")
    monkeypatch.setenv("BLOCKTEST_DATA_DIR", str(tmp_path))
    # football is not bundled; an empty data dir leaves nothing to find
    with pytest.raises(DatasetUnavailable, match="BLOCKTEST_DATA_DIR"):
        load_dataset("football")


def test_data_dir_override(monkeypatch, tmp_path):
    (tmp_path / "football.edgelist").write_text("A B\nB C\nC A\nC D\n")
    (tmp_path / "football.labels").write_text("A x\nB x\nC y\nD y\n")
    monkeypatch.setenv("BLOCKTEST_DATA_DIR", str(tmp_path))
    g, labels, truth = load_dataset("football")
    assert g.n == 4 and truth.tolist() == [0, 0, 1, 1]


def test_result_document_round_trip(tmp_path):
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    cfg = DetectConfig(surrogates=5)
    result = detect_communities(g, cfg)
    vl = [f"v{i}" for i in range(6)]
    doc = result_document(result, cfg, vl, {"path": "x"}, 0.5)
    path = tmp_path / "r.json"
    with open(path, "w") as fh:
        write_result(fh, doc)
    loaded = json.loads(path.read_text())
    assert loaded["format"] == "blocktest-result" and loaded["version"] == 1
    assert loaded["communities"] == result.n_communities
    assert loaded["config"]["weights"]["gamma1"] == cfg.weights.gamma1
    assert set(loaded["tree"]["vertices"]) == set(vl)
    assert read_result(path) == {v: str(c) for v, c in zip(vl, result.partition)}
    assert read_partition_file(path) == read_result(path)


def test_read_result_rejects_other_documents(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"format": "other"}')
    with pytest.raises(DataError):
        read_result(p)
    p.write_text('{"format": "blocktest-result", "version": 99, "labels": {}}')
    with pytest.raises(DataError, match="version"):
        read_result(p)
    p.write_text("not json")
    with pytest.raises(DataError):
        read_result(p)

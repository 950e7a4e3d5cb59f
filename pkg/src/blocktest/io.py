"""Edge-list and labels files, result documents, bundled datasets.

Edge lists are whitespace-separated ``u v`` lines; ``#`` starts a comment line.
A line holding a single label declares a vertex, which is how isolated
vertices and vertex order survive a round trip. Vertex labels are arbitrary
strings, numbered densely in order of first appearance.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .graph import Graph, canonical_labels

RESULT_FORMAT = "blocktest-result"
RESULT_VERSION = 1
DATA_DIR_ENV = "BLOCKTEST_DATA_DIR"
DATASETS = ("karate", "football")


class DataError(Exception):
    """Malformed or inconsistent input data."""


def _lines(source) -> Iterable[tuple[int, str]]:
    if isinstance(source, (str, Path)) and Path(source).exists():
        text = Path(source).read_text()
    elif hasattr(source, "read"):
        text = source.read()
    else:
        raise DataError(f"cannot read {source}: no such file")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def read_edgelist(source) -> tuple[Graph, list[str]]:
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in _lines(source):
        toks = line.split()
        if len(toks) > 2:
            raise DataError(f"line {lineno}: expected 'u v', got {line!r}")
        for t in toks:
            ids.setdefault(t, len(ids))
        if len(toks) == 1:
            continue
        u, v = ids[toks[0]], ids[toks[1]]
        if u == v:
            raise DataError(f"line {lineno}: self-loop on {toks[0]!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DataError(f"line {lineno}: duplicate edge {toks[0]} {toks[1]}")
        seen.add(key)
        edges.append(key)
    return Graph(len(ids), edges), list(ids)


def format_edgelist(g: Graph, labels: Sequence[str] | None = None, comments: Sequence[str] = ()) -> str:
    """Canonical text: vertex ``k`` is introduced before vertex ``k + 1``.

    Edges are listed by (larger id, smaller id); a vertex with no smaller
    neighbor gets a declaration line first.
    """
    labels = [str(i) for i in range(g.n)] if labels is None else [str(x) for x in labels]
    out = [f"# {c}\n" for c in comments]
    by_hi: dict[int, list[int]] = {}
    for i, j in g.edges.tolist():
        by_hi.setdefault(j, []).append(i)
    for k in range(g.n):
        lower = by_hi.get(k)
        if not lower:
            out.append(f"{labels[k]}\n")
            continue
        for i in lower:
            out.append(f"{labels[i]} {labels[k]}\n")
    return "".join(out)


def write_edgelist(path, g: Graph, labels: Sequence[str] | None = None, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_edgelist(g, labels, comments))


def read_labels(source, vertex_labels: Sequence[str]) -> np.ndarray:
    """Community ids aligned to ``vertex_labels``, renumbered 0..K-1 by first occurrence in graph order."""
    found: dict[str, str] = {}
    for lineno, line in _lines(source):
        toks = line.split()
        if len(toks) != 2:
            raise DataError(f"line {lineno}: expected 'vertex community', got {line!r}")
        if toks[0] in found:
            raise DataError(f"line {lineno}: vertex {toks[0]!r} labelled twice")
        found[toks[0]] = toks[1]
    return align_labels(found, vertex_labels)


def align_labels(mapping: dict, vertex_labels: Sequence[str]) -> np.ndarray:
    missing = [v for v in vertex_labels if v not in mapping]
    extra = set(mapping) - set(vertex_labels)
    if missing or extra:
        raise DataError(
            f"labels do not match the vertex set ({len(missing)} missing, {len(extra)} unknown"
            + (f", e.g. {(missing or sorted(extra))[0]!r})" if missing or extra else ")")
        )
    return canonical_labels([mapping[v] for v in vertex_labels])


def format_labels(partition: Sequence[int], vertex_labels: Sequence[str] | None = None, comments: Sequence[str] = ()) -> str:
    vertex_labels = [str(i) for i in range(len(partition))] if vertex_labels is None else vertex_labels
    body = "".join(f"{v} {int(c)}\n" for v, c in zip(vertex_labels, partition))
    return "".join(f"# {c}\n" for c in comments) + body


def write_labels(path, partition: Sequence[int], vertex_labels: Sequence[str] | None = None, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_labels(partition, vertex_labels, comments))


def file_digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def graph_digest(g: Graph) -> str:
    return "sha256:" + hashlib.sha256(np.int64(g.n).tobytes() + g.edges.astype("<i8").tobytes()).hexdigest()


def _tree_with_labels(node: dict, vertex_labels: Sequence[str]) -> dict:
    out = dict(node)
    out["vertices"] = [vertex_labels[v] for v in node["vertices"]]
    if "children" in node:
        out["children"] = [_tree_with_labels(c, vertex_labels) for c in node["children"]]
    return out


def result_document(result, cfg, vertex_labels: Sequence[str], source: dict, timing: float) -> dict:
    """Versioned JSON-ready dict; see the README for the field list."""
    config = asdict(cfg)
    return {
        "format": RESULT_FORMAT,
        "version": RESULT_VERSION,
        "input": source,
        "config": config,
        "communities": result.n_communities,
        "labels": {v: int(c) for v, c in zip(vertex_labels, result.partition)},
        "tree": _tree_with_labels(result.tree.to_dict(), vertex_labels),
        "timing_seconds": round(timing, 3),
    }


def write_result(fh: TextIO, doc: dict) -> None:
    json.dump(doc, fh, indent=2)
    fh.write("\n")


def read_result(path) -> dict[str, str]:
    """Vertex label -> community id from a result document."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read result document {path}: {exc}") from exc
    if doc.get("format") != RESULT_FORMAT:
        raise DataError(f"{path} is not a {RESULT_FORMAT} document")
    if doc.get("version", 0) > RESULT_VERSION:
        raise DataError(f"{path} has version {doc['version']}, newest supported is {RESULT_VERSION}")
    return {str(k): str(v) for k, v in doc["labels"].items()}


def read_partition_file(path) -> dict[str, str]:
    """Vertex label -> community id from either a result document or a labels file."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return read_result(path)
    found = {}
    for lineno, line in _lines(Path(path)):
        toks = line.split()
        if len(toks) != 2:
            raise DataError(f"{path} line {lineno}: expected 'vertex community'")
        found[toks[0]] = toks[1]
    return found


class DatasetUnavailable(DataError):
    pass


def _dataset_files(name: str) -> tuple[Path, Path]:
    fname = (f"{name}.edgelist", f"{name}.labels")
    search = []
    if os.environ.get(DATA_DIR_ENV):
        search.append(Path(os.environ[DATA_DIR_ENV]))
    search.append(Path(str(resources.files("blocktest") / "data")))
    for d in search:
        if (d / fname[0]).exists() and (d / fname[1]).exists():
            return d / fname[0], d / fname[1]
    raise DatasetUnavailable(
        f"dataset {name!r} not found; place {fname[0]} and {fname[1]} in ${DATA_DIR_ENV} "
        f"(searched: {', '.join(str(d) for d in search)})"
    )


def load_dataset(name: str) -> tuple[Graph, list[str], np.ndarray]:
    """Graph, vertex labels and ground-truth partition of a named benchmark."""
    if name not in DATASETS:
        raise DataError(f"unknown dataset {name!r}; choose from {', '.join(DATASETS)}")
    edges, labels = _dataset_files(name)
    g, vertex_labels = read_edgelist(edges)
    return g, vertex_labels, read_labels(labels, vertex_labels)

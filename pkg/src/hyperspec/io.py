"""Readers and writers for the graph, hypergraph, tensor and partition files."""
from __future__ import annotations

import json
from pathlib import Path

from .equitable import Partition
from .hypergraph import Graph, Hypergraph
from .tensor import SparseTensor


def parse_graph(text: str) -> Graph:
    """Plain-text graph: first line ``n m``, then m lines ``u v`` (0-based)."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise ValueError("graph file must start with a line 'n m'")
    n, m = (int(t) for t in lines[0])
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"graph header declares {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise ValueError(f"bad edge line {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return Graph(n, edges)


def format_graph(G: Graph) -> str:
    return "\n".join([f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(G: Graph, path) -> None:
    Path(path).write_text(format_graph(G))


def read_hypergraph(path) -> Hypergraph:
    return Hypergraph.from_json(json.loads(Path(path).read_text()))


def write_json(data, path) -> None:
    Path(path).write_text(json.dumps(data, sort_keys=True) + "\n")


def read_tensor(path) -> SparseTensor:
    return SparseTensor.from_json(json.loads(Path(path).read_text()))


def read_partition(path) -> Partition:
    return Partition.from_json(json.loads(Path(path).read_text()))

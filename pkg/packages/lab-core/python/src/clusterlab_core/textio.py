"""
Plain-text graph and hypergraph format.

The first line is ``n r`` (``r = 0`` for a graph); every further non-blank
line is one edge given as space-separated vertex indices. Lines starting
with ``#`` are comments.
"""
from pathlib import Path
from typing import List, Union

from clusterlab_core.errors import InvalidInstanceError
from clusterlab_core.graphs import LabeledGraph, RUniformHypergraph

Structure = Union[LabeledGraph, RUniformHypergraph]


def parse_structure(text: str) -> Structure:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInstanceError("empty structure file")
    header = lines[0].split()
    if len(header) != 2:
        raise InvalidInstanceError(f"header must be 'n r', got '{lines[0]}'")
    try:
        n, r = int(header[0]), int(header[1])
        edges: List[List[int]] = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidInstanceError(f"non-integer token in structure file: {exc}") from exc
    if r == 0:
        for e in edges:
            if len(e) != 2:
                raise InvalidInstanceError(f"graph edge must have 2 vertices, got {e}")
        return LabeledGraph.from_edges(n, edges)
    return RUniformHypergraph.build(n, r, edges)


def format_structure(obj: Structure) -> str:
    if isinstance(obj, LabeledGraph):
        header, edges = f"{obj.n} 0", obj.edges()
    else:
        header, edges = f"{obj.n} {obj.r}", obj.edges
    return "\n".join([header] + [" ".join(str(v) for v in e) for e in edges]) + "\n"


def read_structure(path: Union[str, Path]) -> Structure:
    return parse_structure(Path(path).read_text(encoding="utf-8"))


def write_structure(obj: Structure, path: Union[str, Path]) -> None:
    Path(path).write_text(format_structure(obj), encoding="utf-8")

"""Simple loopless undirected graphs: construction, parsing and enumeration.

Graphs are immutable.  The adjacency matrix is stored densely as a read-only
``uint8`` array, alongside the sorted edge list and per-vertex neighbour
bitmasks used by the combinatorial counters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    EdgeCountTooLarge,
    GraphFormatError,
    IndexOutOfRange,
    InternalInconsistency,
    LoopEdge,
)

Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Graph:
    vertex_count: int
    edges: tuple[Edge, ...]
    adjacency: np.ndarray = field(repr=False)
    masks: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        a = self.adjacency
        if a.shape != (self.vertex_count, self.vertex_count):
            raise InternalInconsistency("adjacency shape does not match vertex_count")
        if not np.array_equal(a, a.T) or a.diagonal().any():
            raise InternalInconsistency("adjacency must be symmetric with zero diagonal")
        if 2 * len(self.edges) != int(a.sum()):
            raise InternalInconsistency("edge list does not match adjacency")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.masks]

    def non_isolated(self) -> list[int]:
        return [v for v, m in enumerate(self.masks) if m]

    def is_padded_complete(self, n: int) -> bool:
        """True if the non-isolated vertices induce exactly K_n."""
        active = self.non_isolated()
        return len(active) == n and self.edge_count == n * (n - 1) // 2

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def to_edge_list_text(self) -> str:
        lines = [f"p {self.vertex_count}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def _build(vertex_count: int, edges: Iterable[Edge]) -> Graph:
    edges = tuple(sorted(edges))
    adj = np.zeros((vertex_count, vertex_count), dtype=np.uint8)
    masks = [0] * vertex_count
    for u, v in edges:
        adj[u, v] = adj[v, u] = 1
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    adj.setflags(write=False)
    return Graph(vertex_count, edges, adj, tuple(masks))


def from_edge_list(pairs: Iterable[Edge], vertex_count: int | None = None) -> Graph:
    """Build a graph from vertex pairs.

    Duplicate pairs, in either orientation, are merged silently.  When
    ``vertex_count`` is omitted it defaults to one more than the largest index
    seen (zero for an empty list, which is then rejected).
    """
    seen = set()
    top = -1
    for u, v in pairs:
        u, v = int(u), int(v)
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if u < 0 or v < 0:
            raise IndexOutOfRange(f"negative vertex index in ({u}, {v})")
        seen.add((min(u, v), max(u, v)))
        top = max(top, u, v)
    if vertex_count is None:
        vertex_count = top + 1
    if vertex_count < 1:
        raise IndexOutOfRange("a graph needs at least one vertex")
    if top >= vertex_count:
        raise IndexOutOfRange(f"vertex {top} out of range for vertex_count={vertex_count}")
    return _build(vertex_count, seen)


def complete(n: int) -> Graph:
    if n < 1:
        raise IndexOutOfRange("complete graph needs n >= 1")
    return _build(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    if n < 1:
        raise IndexOutOfRange("path needs n >= 1")
    return _build(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise IndexOutOfRange("cycle needs n >= 3")
    return _build(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def empty(n: int) -> Graph:
    return _build(n, ())


def count_graphs(vertex_max: int, edge_count: int) -> int:
    return comb(vertex_max * (vertex_max - 1) // 2, edge_count)


def enumerate_graphs(
    vertex_max: int, edge_count: int, start: int = 0, stop: int | None = None
) -> Iterator[Graph]:
    """Yield every labeled graph on ``vertex_max`` vertices with ``edge_count`` edges.

    Graphs are edge subsets of K_{vertex_max} in lexicographic order of the
    sorted edge tuple, so ``start``/``stop`` select a reproducible slice of the
    stream for splitting work between processes.
    """
    slots = vertex_max * (vertex_max - 1) // 2
    if vertex_max < 1:
        raise IndexOutOfRange("vertex_max must be positive")
    if edge_count < 0 or edge_count > slots:
        raise EdgeCountTooLarge(
            f"{edge_count} edges do not fit on {vertex_max} vertices (max {slots})"
        )
    all_edges = list(combinations(range(vertex_max), 2))
    for subset in islice(combinations(all_edges, edge_count), start, stop):
        yield _build(vertex_count=vertex_max, edges=subset)


def edge_masks(vertex_max: int, edge_count: int) -> Iterator[tuple[Edge, ...]]:
    """Raw edge tuples in the same order as :func:`enumerate_graphs`.

    Sweeps over hundreds of thousands of graphs use this to skip building the
    dense adjacency matrix.
    """
    all_edges = list(combinations(range(vertex_max), 2))
    return combinations(all_edges, edge_count)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list text format.

    An optional ``p <vertex_count>`` line may precede the edges; each edge
    line holds two 0-based indices; ``#`` starts a comment line.
    """
    vertex_count = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if vertex_count is not None or pairs or len(tokens) != 2:
                raise GraphFormatError(f"line {lineno}: misplaced or malformed 'p' line")
            vertex_count = _int(tokens[1], lineno)
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        pairs.append((_int(tokens[0], lineno), _int(tokens[1], lineno)))
    if vertex_count is None and not pairs:
        raise GraphFormatError("no vertices or edges in input")
    return from_edge_list(pairs, vertex_count)


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: not an integer: {token!r}") from None


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))

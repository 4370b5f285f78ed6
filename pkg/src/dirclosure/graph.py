"""Directed-graph core: adjacency storage, edge-list ingestion, degrees, moments.

Graphs are simple (no self-loops, no duplicate directed edges) and immutable
after construction, so every query below is safe to call concurrently.
Reciprocated pairs (u->v and v->u) are kept as two independent edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence


class Direction(Enum):
    """Edge direction relative to a reference node: incoming or outgoing."""

    IN = "i"
    OUT = "o"

    @property
    def complement(self) -> "Direction":
        return Direction.OUT if self is Direction.IN else Direction.IN

    def __str__(self) -> str:
        return self.value


IN = Direction.IN
OUT = Direction.OUT


class EdgeListFormatError(ValueError):
    """Raised for a malformed edge-list line; carries the 1-based line number."""

    def __init__(self, line_number: int, line: str, reason: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"line {line_number}: {reason}: {line!r}")


@dataclass(frozen=True)
class LoadWarnings:
    """Counts of silently repaired defects during edge-list ingestion."""

    duplicate_edges: int = 0
    self_loops: int = 0

    def any(self) -> bool:
        return self.duplicate_edges > 0 or self.self_loops > 0


class DirectedGraph:
    """Simple directed graph with dual adjacency and O(1) edge membership.

    Nodes are dense integers ``0..n-1``; the optional ``labels`` list maps
    each dense id back to the original token it was parsed from.
    """

    __slots__ = ("n", "m", "_out", "_in", "_out_sets", "_in_sets", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("node count must be non-negative")
        if labels is not None and len(labels) != n:
            raise ValueError("labels length must equal node count")
        out_sets: list[set[int]] = [set() for _ in range(n)]
        in_sets: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed")
            if v in out_sets[u]:
                raise ValueError(f"duplicate edge ({u},{v})")
            out_sets[u].add(v)
            in_sets[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self._out_sets = out_sets
        self._in_sets = in_sets
        self._out = [tuple(sorted(s)) for s in out_sets]
        self._in = [tuple(sorted(s)) for s in in_sets]
        self.labels = list(labels) if labels is not None else None

    # -- queries ---------------------------------------------------------

    def _check_node(self, u: int) -> None:
        if not (0 <= u < self.n):
            raise ValueError(f"node {u} out of range for n={self.n}")

    def out_neighbors(self, u: int) -> tuple[int, ...]:
        self._check_node(u)
        return self._out[u]

    def in_neighbors(self, u: int) -> tuple[int, ...]:
        self._check_node(u)
        return self._in[u]

    def neighbors(self, u: int, direction: Direction) -> tuple[int, ...]:
        return self.in_neighbors(u) if direction is IN else self.out_neighbors(u)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._out_sets[u]

    def degree(self, u: int, direction: Direction) -> int:
        return len(self.neighbors(u, direction))

    def in_degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._in[u])

    def out_degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._out[u])

    def reciprocal_degree(self, u: int) -> int:
        """Number of neighbors v with both u->v and v->u present."""
        self._check_node(u)
        out_s, in_s = self._out_sets[u], self._in_sets[u]
        if len(out_s) > len(in_s):
            out_s, in_s = in_s, out_s
        return sum(1 for v in out_s if v in in_s)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All directed edges, ordered by (source, destination)."""
        for u in range(self.n):
            for v in self._out[u]:
                yield (u, v)

    def token(self, u: int) -> str:
        self._check_node(u)
        return self.labels[u] if self.labels is not None else str(u)

    def degree_pairs(self) -> list[tuple[int, int]]:
        """Joint degree sequence [(in_degree, out_degree)] over all nodes."""
        return [(len(self._in[u]), len(self._out[u])) for u in range(self.n)]

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeMoments:
    """Size and second-order moments of a joint degree sequence.

    ``m_xy`` is the mean of ``d_x(u) * d_y(u)`` over all nodes; the integer
    cross-products are summed exactly (Python ints) before the division.
    """

    n: int
    m: int
    m_ii: float
    m_io: float
    m_oo: float

    @classmethod
    def from_degree_pairs(cls, pairs: Sequence[tuple[int, int]]) -> "DegreeMoments":
        n = len(pairs)
        if n == 0:
            raise ValueError("moments undefined for an empty degree sequence")
        s_ii = sum(di * di for di, _ in pairs)
        s_io = sum(di * do for di, do in pairs)
        s_oo = sum(do * do for _, do in pairs)
        m = sum(di for di, _ in pairs)
        if m != sum(do for _, do in pairs):
            raise ValueError("in- and out-degree totals differ; not a valid joint sequence")
        return cls(n=n, m=m, m_ii=s_ii / n, m_io=s_io / n, m_oo=s_oo / n)

    def moment(self, x: Direction, y: Direction) -> float:
        if x is y:
            return self.m_ii if x is IN else self.m_oo
        return self.m_io


def degree_moments(g: DirectedGraph) -> DegreeMoments:
    """Second-order degree moments of ``g``; raises on an empty graph."""
    if g.n == 0:
        raise ValueError("moments undefined for an empty graph")
    return DegreeMoments.from_degree_pairs(g.degree_pairs())


def load_edge_list(source: IO[str] | str | Path) -> tuple[DirectedGraph, LoadWarnings]:
    """Parse a whitespace-separated edge list into a simple directed graph.

    Each non-comment line holds two node tokens (source, destination); lines
    starting with '#' and blank lines are ignored. Tokens are mapped to dense
    ids in first-appearance order. Duplicate edges are dropped and self-loops
    removed, each counted in the returned warnings. Reciprocated pairs stay
    as two edges.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_edge_list(fh)

    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    duplicates = 0
    self_loops = 0

    def intern(token: str) -> int:
        idx = ids.get(token)
        if idx is None:
            idx = len(labels)
            ids[token] = idx
            labels.append(token)
        return idx

    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListFormatError(line_number, raw.rstrip("\n"), f"expected 2 tokens, got {len(parts)}")
        u, v = intern(parts[0]), intern(parts[1])
        if u == v:
            self_loops += 1
            continue
        if (u, v) in seen:
            duplicates += 1
            continue
        seen.add((u, v))
        edges.append((u, v))

    graph = DirectedGraph(len(labels), edges, labels=labels)
    return graph, LoadWarnings(duplicate_edges=duplicates, self_loops=self_loops)


def write_edge_list(g: DirectedGraph, sink: IO[str]) -> None:
    """Write ``g`` as a two-column edge list using original tokens."""
    for u, v in g.edges():
        sink.write(f"{g.token(u)} {g.token(v)}\n")


def write_id_map(g: DirectedGraph, sink: IO[str]) -> None:
    """Write the dense-id to token mapping as CSV ``dense_id,token``."""
    sink.write("dense_id,token\n")
    for u in range(g.n):
        sink.write(f"{u},{g.token(u)}\n")

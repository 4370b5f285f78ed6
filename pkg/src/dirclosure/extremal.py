"""Four-class layered construction with extreme io-closure asymmetry.

Nodes fall into four classes C1..C4 and every cross-class edge block is
complete: C3 -> C4, C3 -> C2, C2 -> C1, C3 -> C1. Scaling the class sizes
drives the two average io-closure coefficients apart, which is what makes
the construction useful as a stress case.

``claimed_io_closure`` gives the closed forms one obtains by counting only
wedges whose tail lies outside the head's own class. With any class size
above one that undercounts (a C1 head also has io-wedge tails among the
other C1 nodes), so the closed forms and the engine-computed averages
disagree; both are reported side by side, never merged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DirectedGraph


@dataclass(frozen=True)
class ExtremalSpec:
    """Class sizes for the four-block construction; all must be >= 1."""

    n1: int
    n2: int
    n3: int
    n4: int

    def __post_init__(self) -> None:
        if min(self.n1, self.n2, self.n3, self.n4) < 1:
            raise ValueError("all class sizes must be at least 1")

    @property
    def total(self) -> int:
        return self.n1 + self.n2 + self.n3 + self.n4

    @property
    def edge_count(self) -> int:
        return self.n3 * self.n4 + self.n3 * self.n2 + self.n2 * self.n1 + self.n3 * self.n1


def build_extremal(spec: ExtremalSpec) -> DirectedGraph:
    """Build the four-class graph. Node ids are assigned class by class
    (C1 first), labels are ``c<class>_<index>``."""
    c1 = list(range(spec.n1))
    c2 = list(range(spec.n1, spec.n1 + spec.n2))
    c3 = list(range(spec.n1 + spec.n2, spec.n1 + spec.n2 + spec.n3))
    c4 = list(range(spec.n1 + spec.n2 + spec.n3, spec.total))
    edges: list[tuple[int, int]] = []
    for u in c3:
        for v in c4:
            edges.append((u, v))
    for u in c3:
        for v in c2:
            edges.append((u, v))
    for u in c2:
        for v in c1:
            edges.append((u, v))
    for u in c3:
        for v in c1:
            edges.append((u, v))
    labels = (
        [f"c1_{i}" for i in range(spec.n1)]
        + [f"c2_{i}" for i in range(spec.n2)]
        + [f"c3_{i}" for i in range(spec.n3)]
        + [f"c4_{i}" for i in range(spec.n4)]
    )
    return DirectedGraph(spec.total, edges, labels=labels)


def node_classes(spec: ExtremalSpec) -> list[int]:
    """Class number (1..4) of each dense node id in a built graph."""
    out: list[int] = []
    for cls, size in enumerate((spec.n1, spec.n2, spec.n3, spec.n4), start=1):
        out.extend([cls] * size)
    return out


def claimed_io_closure(spec: ExtremalSpec) -> tuple[float, float]:
    """Closed-form (average io_i, average io_o) from cross-class counting.

    n1*n2 / ((n2 + n4) * N) and n1*n2 / ((n1 + n4) * N) with N the total
    node count. Exact for all-singleton classes; an undercount otherwise
    (see module docstring), so treat as a claim to compare against the
    engine-computed averages, not as ground truth.
    """
    total = spec.total
    acc_io_i = spec.n1 * spec.n2 / ((spec.n2 + spec.n4) * total)
    acc_io_o = spec.n1 * spec.n2 / ((spec.n1 + spec.n4) * total)
    return acc_io_i, acc_io_o

"""Head-based directed closure coefficients.

A directed wedge is an ordered pair of directed edges sharing exactly one
node (the center). The non-center end of the first edge is the head, the
non-center end of the second edge the tail. Wedge type ``xy``: ``x`` is the
first edge's direction relative to the head, ``y`` the second edge's
direction relative to the center. A wedge is i-closed if the edge
tail->head exists and o-closed if head->tail exists. The closure
coefficient for ``(x, y, z)`` at head ``u`` is the fraction of xy-wedges
headed at ``u`` that are z-closed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .graph import IN, OUT, DirectedGraph, Direction

WedgeType = tuple[Direction, Direction]

WEDGE_TYPES: tuple[WedgeType, ...] = ((IN, IN), (IN, OUT), (OUT, IN), (OUT, OUT))


@dataclass(frozen=True, order=True)
class CoefficientKey:
    """The (x, y, z) triple selecting wedge type and closing direction."""

    x: Direction
    y: Direction
    z: Direction

    @property
    def wedge_type(self) -> WedgeType:
        return (self.x, self.y)

    @property
    def label(self) -> str:
        return f"closure_{self.x}{self.y}_{self.z}"

    def __str__(self) -> str:
        return self.label


ALL_KEYS: tuple[CoefficientKey, ...] = tuple(
    CoefficientKey(x, y, z) for x in (IN, OUT) for y in (IN, OUT) for z in (IN, OUT)
)

# Pairs of global coefficients that are equal in every directed graph: the
# two members of each pair count the same closed structure, read from the
# head of the first edge vs. the head of the second.
SYMMETRIC_PAIRS: tuple[tuple[CoefficientKey, CoefficientKey], ...] = (
    (CoefficientKey(IN, IN, IN), CoefficientKey(OUT, OUT, OUT)),
    (CoefficientKey(IN, IN, OUT), CoefficientKey(OUT, OUT, IN)),
    (CoefficientKey(IN, OUT, IN), CoefficientKey(IN, OUT, OUT)),
    (CoefficientKey(OUT, IN, IN), CoefficientKey(OUT, IN, OUT)),
)


def wedge_label(xy: WedgeType) -> str:
    return f"{xy[0]}{xy[1]}"


@dataclass(frozen=True)
class NodeClosureProfile:
    """Per-node wedge counts, closed-wedge counts, and the 8 coefficients."""

    node: int
    wedges: Mapping[WedgeType, int]
    closed: Mapping[CoefficientKey, int]

    def defined(self, xy: WedgeType) -> bool:
        return self.wedges[xy] > 0

    def coefficient(self, key: CoefficientKey) -> float | None:
        """W^z_xy(u) / W_xy(u), or None when no xy-wedge has head u."""
        w = self.wedges[key.wedge_type]
        if w == 0:
            return None
        return self.closed[key] / w

    def coefficients(self) -> dict[CoefficientKey, float | None]:
        return {key: self.coefficient(key) for key in ALL_KEYS}


def wedge_count(g: DirectedGraph, u: int, xy: WedgeType) -> int:
    """Number of xy-wedges with head ``u`` (tail != head), in closed form.

    Per center v the tail candidates are v's y-neighbors minus the head
    itself when the head appears among them.
    """
    x, y = xy
    total = 0
    for v in g.neighbors(u, x):
        tails = g._in_sets[v] if y is IN else g._out_sets[v]
        total += len(tails) - (1 if u in tails else 0)
    return total


def closed_wedge_count(g: DirectedGraph, u: int, key: CoefficientKey) -> int:
    """Number of z-closed xy-wedges with head ``u``, by head enumeration."""
    closing = g._in_sets[u] if key.z is IN else g._out_sets[u]
    total = 0
    for v in g.neighbors(u, key.x):
        tails = g._in_sets[v] if key.y is IN else g._out_sets[v]
        if len(tails) <= len(closing):
            total += sum(1 for w in tails if w in closing)
        else:
            total += sum(1 for w in closing if w in tails)
    return total


def local_closure(g: DirectedGraph, u: int) -> NodeClosureProfile:
    """All wedge counts, closed counts, and closure coefficients at ``u``."""
    g._check_node(u)
    in_u, out_u = g._in_sets[u], g._out_sets[u]
    wedges: dict[WedgeType, int] = {}
    closed: dict[CoefficientKey, int] = {}
    for x in (IN, OUT):
        centers = g._in[u] if x is IN else g._out[u]
        for y in (IN, OUT):
            n_wedges = 0
            n_closed_i = 0
            n_closed_o = 0
            for v in centers:
                tails = g._in_sets[v] if y is IN else g._out_sets[v]
                n_wedges += len(tails) - (1 if u in tails else 0)
                # u is in neither closing set, so the tail != head rule
                # holds inside the intersections as well
                if len(tails) <= len(in_u):
                    n_closed_i += sum(1 for w in tails if w in in_u)
                else:
                    n_closed_i += sum(1 for w in in_u if w in tails)
                if len(tails) <= len(out_u):
                    n_closed_o += sum(1 for w in tails if w in out_u)
                else:
                    n_closed_o += sum(1 for w in out_u if w in tails)
            wedges[(x, y)] = n_wedges
            closed[CoefficientKey(x, y, IN)] = n_closed_i
            closed[CoefficientKey(x, y, OUT)] = n_closed_o
    return NodeClosureProfile(node=u, wedges=wedges, closed=closed)


def closure_profiles(g: DirectedGraph) -> list[NodeClosureProfile]:
    """Profiles for every node. Nodes are independent; order is by id."""
    return [local_closure(g, u) for u in range(g.n)]


def average_closure(
    g: DirectedGraph, profiles: list[NodeClosureProfile] | None = None
) -> dict[CoefficientKey, float]:
    """Node-mean of each local coefficient, counting undefined ones as 0.

    Uses an exact (order-insensitive) float sum, so the result does not
    depend on node ordering or any partitioning of the node sweep.
    """
    if g.n == 0:
        raise ValueError("average closure undefined for an empty graph")
    if profiles is None:
        profiles = closure_profiles(g)
    out: dict[CoefficientKey, float] = {}
    for key in ALL_KEYS:
        xy = key.wedge_type
        terms = [p.closed[key] / p.wedges[xy] for p in profiles if p.wedges[xy] > 0]
        out[key] = math.fsum(terms) / g.n
    return out


def global_closure(
    g: DirectedGraph, profiles: list[NodeClosureProfile] | None = None
) -> dict[CoefficientKey, float | None]:
    """Closed-wedge fraction over the whole graph, per coefficient key.

    Integer totals are accumulated before the single division; a key whose
    wedge total is zero maps to None.
    """
    if profiles is None:
        profiles = closure_profiles(g)
    wedge_totals = {xy: sum(p.wedges[xy] for p in profiles) for xy in WEDGE_TYPES}
    out: dict[CoefficientKey, float | None] = {}
    for key in ALL_KEYS:
        denom = wedge_totals[key.wedge_type]
        if denom == 0:
            out[key] = None
        else:
            out[key] = sum(p.closed[key] for p in profiles) / denom
    return out


def check_symmetry(
    global_coefficients: Mapping[CoefficientKey, float | None],
) -> dict[tuple[CoefficientKey, CoefficientKey], float]:
    """Residuals |a - b| for the four always-equal global coefficient pairs.

    Both members undefined gives residual 0; one defined and one undefined
    is a structural violation and is reported as ``math.inf``.
    """
    residuals: dict[tuple[CoefficientKey, CoefficientKey], float] = {}
    for a, b in SYMMETRIC_PAIRS:
        va, vb = global_coefficients[a], global_coefficients[b]
        if va is None and vb is None:
            residuals[(a, b)] = 0.0
        elif va is None or vb is None:
            residuals[(a, b)] = math.inf
        else:
            residuals[(a, b)] = abs(va - vb)
    return residuals

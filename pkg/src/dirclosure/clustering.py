"""Center-based directed clustering coefficients.

For center ``u`` and type ``(x, y)``, the wedges are ordered pairs
``(v, u, w)`` where the u-v edge has direction ``x`` relative to ``u``, the
u-w edge has direction ``y`` relative to ``u``, and the two edges share only
``u`` (so ``v != w``). A wedge is closed when the edge ``w -> v`` exists.
The same wedge set, read from ``v`` as the head, has closure type
``(complement(x), y)``, which is what ties these coefficients to the
head-based ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .closure import WEDGE_TYPES, WedgeType, wedge_label
from .graph import IN, DirectedGraph


@dataclass(frozen=True)
class NodeClusteringProfile:
    """Per-type wedge denominators, closed counts, and coefficients at one node."""

    node: int
    denominators: Mapping[WedgeType, int]
    closed: Mapping[WedgeType, int]

    def defined(self, xy: WedgeType) -> bool:
        return self.denominators[xy] > 0

    def coefficient(self, xy: WedgeType) -> float | None:
        d = self.denominators[xy]
        if d == 0:
            return None
        return self.closed[xy] / d

    def coefficients(self) -> dict[WedgeType, float | None]:
        return {xy: self.coefficient(xy) for xy in WEDGE_TYPES}


def clustering_label(xy: WedgeType) -> str:
    return f"clustering_{wedge_label(xy)}"


def local_clustering(g: DirectedGraph, u: int) -> NodeClusteringProfile:
    """Clustering profile of center ``u`` for all four direction types.

    Denominators come from degree arithmetic: d_x(d_x - 1) for equal
    directions, d_x*d_y - r(u) for mixed ones (reciprocal pairs would put
    both edges on the same neighbor). Closed counts are enumerated with
    membership probes for the w -> v closing edge.
    """
    g._check_node(u)
    d_in = g.in_degree(u)
    d_out = g.out_degree(u)
    recip = g.reciprocal_degree(u)
    denominators: dict[WedgeType, int] = {}
    closed: dict[WedgeType, int] = {}
    for x in (IN, IN.complement):
        d_x = d_in if x is IN else d_out
        firsts = g.neighbors(u, x)
        for y in (IN, IN.complement):
            d_y = d_in if y is IN else d_out
            denominators[(x, y)] = d_x * (d_x - 1) if x is y else d_x * d_y - recip
            seconds = g.neighbors(u, y)
            n_closed = 0
            for v in firsts:
                in_v = g._in_sets[v]
                for w in seconds:
                    if w != v and w in in_v:
                        n_closed += 1
            closed[(x, y)] = n_closed
    return NodeClusteringProfile(node=u, denominators=denominators, closed=closed)


def clustering_profiles(g: DirectedGraph) -> list[NodeClusteringProfile]:
    return [local_clustering(g, u) for u in range(g.n)]


def mean_clustering(
    g: DirectedGraph, profiles: list[NodeClusteringProfile] | None = None
) -> dict[WedgeType, float]:
    """Node-mean of each clustering coefficient with undefined taken as 0."""
    if g.n == 0:
        raise ValueError("mean clustering undefined for an empty graph")
    if profiles is None:
        profiles = clustering_profiles(g)
    out: dict[WedgeType, float] = {}
    for xy in WEDGE_TYPES:
        terms = [p.closed[xy] / p.denominators[xy] for p in profiles if p.denominators[xy] > 0]
        out[xy] = math.fsum(terms) / g.n
    return out

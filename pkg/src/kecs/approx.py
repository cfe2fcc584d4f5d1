"""Maximum k-edge-colorable subgraph approximation.

The pipeline takes a maximum k-matching ``F`` (a largest subgraph of
maximum degree at most ``k``), which has at least as many edges as any
k-colorable subgraph, and colors each component of ``F`` separately. The
two triangle families where a component cannot beat Shannon's ratio are
colored directly to their optimum ``k``; all other components go through
:func:`kecs.pipeline.color_graph` with palette ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .coloring import PartialColoring
from .multigraph import Multigraph
from .pipeline import color_graph

SPECIAL_EVEN = "special-even"
SPECIAL_ODD = "special-odd"
GENERIC = "generic"


def max_k_matching(g: Multigraph, k: int) -> list[int]:
    """Edge ids of a largest subgraph in which every degree is at most ``k``.

    Reduces to maximum-cardinality matching: vertex ``v`` becomes
    ``min(k, deg v)`` ports, edge ``uv`` becomes a linked pair ``e_u - e_v``
    with ``e_u`` joined to the ports of ``u`` and ``e_v`` to those of ``v``.
    An edge is selected iff its link is unmatched. Link weights grow with the
    edge id, so among maximum solutions lower ids are kept.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    h = nx.Graph()
    for e, (u, v) in enumerate(g.edges):
        h.add_edge(("e", e, 0), ("e", e, 1), weight=e + 2)
        for side, x in ((0, u), (1, v)):
            for i in range(min(k, g.degree(x))):
                h.add_edge(("e", e, side), ("p", x, i), weight=1)
    matching = nx.max_weight_matching(h, maxcardinality=True)
    linked = set()
    for a, b in matching:
        if a[0] == "e" and b[0] == "e":
            linked.add(a[1])
    return [e for e in range(g.m) if e not in linked]


def classify_component(c: Multigraph, k: int) -> str:
    """Whether ``c`` is one of the two triangle families that cap the ratio."""
    if c.n != 3:
        return GENERIC
    mults = sorted((c.multiplicity(0, 1), c.multiplicity(0, 2), c.multiplicity(1, 2)))
    if k % 2 == 0 and k >= 2 and mults == [k // 2] * 3:
        return SPECIAL_EVEN
    h = (k - 1) // 2
    if k % 2 == 1 and h >= 1 and mults == [h, h, h + 1]:
        return SPECIAL_ODD
    return GENERIC


def color_special(c: Multigraph, k: int) -> PartialColoring:
    """Color ``k`` edges of a 3-vertex component, one per color.

    Colors go round-robin over the vertex pairs, fullest pair first.
    """
    pairs = sorted(((0, 1), (0, 2), (1, 2)), key=lambda p: (-c.multiplicity(*p), p))
    pools = [list(c.edges_between(*p)) for p in pairs]
    cols: list[int | None] = [None] * c.m
    colour = 1
    i = 0
    while colour <= k and any(pools):
        pool = pools[i % 3]
        if pool:
            cols[pool.pop(0)] = colour
            colour += 1
        i += 1
    return PartialColoring(k, tuple(cols))


@dataclass(frozen=True)
class ComponentReport:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    classification: str
    colored: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.colored, len(self.edges))


@dataclass(frozen=True)
class ApproxResult:
    k: int
    matching: tuple[int, ...]
    components: tuple[ComponentReport, ...]
    coloring: PartialColoring
    guaranteed_fraction: Fraction
    uncertified: bool = False

    @property
    def colored(self) -> int:
        return self.coloring.colored_count

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.colored, len(self.matching)) if self.matching else Fraction(1)

    @property
    def has_special(self) -> bool:
        return any(c.classification != GENERIC for c in self.components)


def approximate_kecs(g: Multigraph, k: int, budget: int | None = None) -> ApproxResult:
    """Color a large k-edge-colorable subgraph of ``g``."""
    f = max_k_matching(g, k)
    sub, verts, emap = g.subgraph(f)
    cols: list[int | None] = [None] * g.m
    reports = []
    uncertified = False
    for comp in sub.components():
        piece, pverts, pedges = sub.induced(comp)
        if piece.m == 0:
            continue
        kind = classify_component(piece, k)
        if kind == GENERIC:
            res = color_graph(piece, palette=k, budget=budget)
            pc = res.coloring
            uncertified |= res.uncertified
        else:
            pc = color_special(piece, k)
        for j, colour in enumerate(pc.colors):
            cols[emap[pedges[j]]] = colour
        reports.append(
            ComponentReport(
                tuple(verts[v] for v in pverts),
                tuple(emap[e] for e in pedges),
                kind,
                pc.colored_count,
            )
        )
    guaranteed = min((r.fraction for r in reports), default=Fraction(1))
    return ApproxResult(k, tuple(f), tuple(reports), PartialColoring(k, tuple(cols)), guaranteed, uncertified)

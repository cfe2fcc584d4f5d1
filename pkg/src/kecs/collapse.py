"""Contraction of k-collapsible vertex triples and lifting colorings back.

A triple ``H = {x, y, z}`` is k-collapsible when at most ``k`` edges leave
it and, for every ``x`` in it, the edges between the other two vertices are
at least as many as the edges from ``x`` to the outside. Contracting ``H``
to one vertex loses nothing essential: any proper coloring of the
contracted graph lifts back with ``min(k, |E(H)|)`` internal edges colored.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

from .coloring import PartialColoring, validate
from .multigraph import Multigraph


class LiftError(ValueError):
    """The coloring to lift is not a proper coloring of the collapsed graph."""


@dataclass(frozen=True)
class CollapseRecord:
    """One contraction step.

    Ids in ``triple``, ``internal_edges`` and ``boundary_edges`` refer to the
    graph before the step. ``boundary_edges`` holds ``(edge, inside, outside)``
    triples. ``vertex_map[v]`` is the index of ``v`` afterwards (the triple
    maps to ``new_vertex``); ``edge_map[j]`` is the previous id of edge ``j``
    of the contracted graph.
    """

    triple: tuple[int, int, int]
    internal_edges: tuple[int, ...]
    boundary_edges: tuple[tuple[int, int, int], ...]
    new_vertex: int
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    before: Multigraph
    after: Multigraph


def _is_collapsible(g: Multigraph, tri: tuple[int, int, int], k: int) -> bool:
    a, b, c = tri
    inside = {a, b, c}
    internal = g.multiplicity(a, b) + g.multiplicity(a, c) + g.multiplicity(b, c)
    if internal == 0:
        return False
    out = {x: sum(1 for e in g.incident(x) if g.other(e, x) not in inside) for x in tri}
    if sum(out.values()) > k:
        return False
    opposite = {a: g.multiplicity(b, c), b: g.multiplicity(a, c), c: g.multiplicity(a, b)}
    return all(opposite[x] >= out[x] for x in tri)


def find_k_collapsible(g: Multigraph, k: int) -> tuple[int, int, int] | None:
    """Lexicographically smallest k-collapsible triple with at least one edge."""
    if k < 0:
        raise ValueError("k must be non-negative")
    for tri in combinations(range(g.n), 3):
        if _is_collapsible(g, tri, k):
            return tri
    return None


def collapse_triple(g: Multigraph, tri: tuple[int, int, int]) -> tuple[Multigraph, CollapseRecord]:
    """Contract ``tri`` to the vertex with its smallest index."""
    tri = tuple(sorted(tri))  # type: ignore[assignment]
    inside = set(tri)
    h = tri[0]
    vmap = []
    nxt = 0
    for v in range(g.n):
        if v in inside and v != h:
            vmap.append(-1)
            continue
        vmap.append(nxt)
        nxt += 1
    for v in tri[1:]:
        vmap[v] = vmap[h]
    internal, boundary, kept = [], [], []
    for e, (u, v) in enumerate(g.edges):
        if u in inside and v in inside:
            internal.append(e)
            continue
        if u in inside or v in inside:
            x, y = (u, v) if u in inside else (v, u)
            boundary.append((e, x, y))
        kept.append(e)
    after = Multigraph(nxt, tuple((vmap[g.edges[e][0]], vmap[g.edges[e][1]]) for e in kept))
    rec = CollapseRecord(tri, tuple(internal), tuple(boundary), vmap[h], tuple(vmap), tuple(kept), g, after)  # type: ignore[arg-type]
    return after, rec


def collapse_all(g: Multigraph, k: int) -> tuple[Multigraph, list[CollapseRecord]]:
    """Contract k-collapsible triples until none is left."""
    records = []
    cur = g
    while (tri := find_k_collapsible(cur, k)) is not None:
        cur, rec = collapse_triple(cur, tri)
        records.append(rec)
    return cur, records


def _lift_one(rec: CollapseRecord, col: PartialColoring) -> PartialColoring:
    g = rec.before
    k = col.k
    cols: list[int | None] = [None] * g.m
    for j, old in enumerate(rec.edge_map):
        cols[old] = col.colors[j]
    remaining = list(rec.internal_edges)
    used_inside: set[int] = set()
    a, b, c = rec.triple
    opposite = {a: (b, c), b: (a, c), c: (a, b)}
    for x in rec.triple:
        colours = sorted(cols[e] for e, xin, _ in rec.boundary_edges if xin == x and cols[e] is not None)  # type: ignore[type-var]
        targets = [e for e in remaining if set(g.edges[e]) == set(opposite[x])]
        for colour, e in zip(colours, targets):
            cols[e] = colour
            used_inside.add(colour)
            remaining.remove(e)
    at_boundary = {cols[e] for e, _, _ in rec.boundary_edges} - {None}
    spare = [c2 for c2 in range(1, k + 1) if c2 not in at_boundary and c2 not in used_inside]
    for colour, e in zip(spare, list(remaining)):
        cols[e] = colour
    return PartialColoring(k, tuple(cols))


def lift_coloring(records: Sequence[CollapseRecord], col: PartialColoring) -> PartialColoring:
    """Lift a coloring of the fully collapsed graph back to the original graph."""
    if not records:
        return col
    final = records[-1].after
    problems = validate(final, col)
    if problems:
        raise LiftError("cannot lift an improper coloring: " + "; ".join(problems[:3]))
    for rec in reversed(records):
        col = _lift_one(rec, col)
    return col

"""Partial edge colorings, free components and the potential."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import total_ordering

from .multigraph import Multigraph


class ColoringFormatError(ValueError):
    pass


@dataclass(frozen=True)
class PartialColoring:
    """Colors ``1..k`` per edge id; ``None`` marks an uncolored edge."""

    k: int
    colors: tuple[int | None, ...]

    @classmethod
    def empty(cls, g: Multigraph, k: int) -> PartialColoring:
        return cls(k, (None,) * g.m)

    @classmethod
    def from_mapping(cls, g: Multigraph, k: int, mapping: Mapping[int, int]) -> PartialColoring:
        cols: list[int | None] = [None] * g.m
        for e, c in mapping.items():
            cols[e] = c
        return cls(k, tuple(cols))

    def __getitem__(self, eid: int) -> int | None:
        return self.colors[eid]

    def with_colors(self, changes: Mapping[int, int | None]) -> PartialColoring:
        cols = list(self.colors)
        for e, c in changes.items():
            cols[e] = c
        return PartialColoring(self.k, tuple(cols))

    @property
    def colored_count(self) -> int:
        return sum(c is not None for c in self.colors)

    def colored_edges(self) -> list[int]:
        return [e for e, c in enumerate(self.colors) if c is not None]

    def uncolored_edges(self) -> list[int]:
        return [e for e, c in enumerate(self.colors) if c is None]


def used_colors(g: Multigraph, col: PartialColoring, v: int) -> set[int]:
    return {col.colors[e] for e in g.incident(v)} - {None}  # type: ignore[misc]


def free_colors(g: Multigraph, col: PartialColoring, v: int) -> frozenset[int]:
    """Colors of ``1..k`` not used by any colored edge at ``v``."""
    if not 0 <= v < g.n:
        raise IndexError(f"unknown vertex {v}")
    return frozenset(range(1, col.k + 1)) - used_colors(g, col, v)


@dataclass(frozen=True)
class FreeComponent:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    free: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def trivial(self) -> bool:
        return len(self.vertices) == 1 and not self.edges


def free_components(g: Multigraph, col: PartialColoring) -> list[FreeComponent]:
    """Connected components of the graph of free edges.

    Vertices with a free color and no uncolored edge appear as trivial
    components. Endpoints of uncolored edges are always included, even when
    a palette smaller than the degree leaves them saturated.
    """
    free = [free_colors(g, col, v) for v in g.vertices()]
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    members = {v for v in g.vertices() if free[v]}
    for e, c in enumerate(col.colors):
        if c is None:
            u, v = g.edges[e]
            members.update((u, v))
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    verts: dict[int, list[int]] = {}
    for v in sorted(members):
        verts.setdefault(find(v), []).append(v)
    edges: dict[int, list[int]] = {}
    for e, c in enumerate(col.colors):
        if c is None:
            edges.setdefault(find(g.edges[e][0]), []).append(e)
    out = []
    for root in sorted(verts, key=lambda r: verts[r][0]):
        vs = verts[root]
        fc: frozenset[int] = frozenset().union(*(free[v] for v in vs))
        out.append(FreeComponent(tuple(vs), tuple(edges.get(root, ())), fc))
    return out


@total_ordering
@dataclass(frozen=True)
class Potential:
    """``(c, n_cap, ..., n_1)`` compared lexicographically.

    ``oversize`` lists the sizes of components with more than ``cap`` edges;
    any potential with a nonempty ``oversize`` ranks below every potential
    without one.
    """

    colored: int
    counts: tuple[int, ...]
    oversize: tuple[int, ...] = ()

    @property
    def cap(self) -> int:
        return len(self.counts)

    def key(self) -> tuple:
        return (not self.oversize, self.colored, self.oversize, self.counts)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        return self.key() < other.key()

    def as_tuple(self) -> tuple[int, ...]:
        return (self.colored, *self.counts)

    def __str__(self) -> str:
        body = ",".join(map(str, self.as_tuple()))
        if self.oversize:
            body += ";oversize=" + ",".join(map(str, self.oversize))
        return f"({body})"


def potential_from_components(colored: int, comps: Iterable[FreeComponent], k: int) -> Potential:
    cap = k // 2
    counts = [0] * cap
    over = []
    for q in comps:
        s = q.size
        if s == 0:
            continue
        if s > cap:
            over.append(s)
        else:
            counts[cap - s] += 1
    return Potential(colored, tuple(counts), tuple(sorted(over, reverse=True)))


def potential(g: Multigraph, col: PartialColoring) -> Potential:
    return potential_from_components(col.colored_count, free_components(g, col), col.k)


def validate(g: Multigraph, col: PartialColoring) -> list[str]:
    """Human-readable violations; empty iff ``col`` is a proper partial coloring of ``g``."""
    out = []
    if len(col.colors) != g.m:
        out.append(f"coloring covers {len(col.colors)} edges, graph has {g.m}")
        return out
    for e, c in enumerate(col.colors):
        if c is not None and not (isinstance(c, int) and 1 <= c <= col.k):
            out.append(f"edge {e} has color {c} outside 1..{col.k}")
    for v in g.vertices():
        seen: dict[int, int] = {}
        for e in g.incident(v):
            c = col.colors[e]
            if c is None:
                continue
            if c in seen:
                out.append(f"edges {seen[c]} and {e} share color {c} at vertex {v}")
            else:
                seen[c] = e
    return out


def format_coloring(col: PartialColoring) -> str:
    lines = [f"c {e} {c or 0}" for e, c in enumerate(col.colors)]
    lines.append(f"s colored {col.colored_count} total {len(col.colors)} k {col.k}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, g: Multigraph | None = None) -> PartialColoring:
    """Parse ``c <edge> <color>`` lines and the trailing ``s`` summary line.

    Report lines written by ``kecs color`` (``b`` and ``g``) are ignored, so
    its output can be verified as is.
    """
    assigned: dict[int, int] = {}
    k = total = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] in ("b", "g"):
            continue
        try:
            if parts[0] == "c" and len(parts) == 3:
                e, c = int(parts[1]), int(parts[2])
                if e in assigned:
                    raise ColoringFormatError(f"line {lineno}: edge {e} listed twice")
                if e < 0 or c < 0:
                    raise ColoringFormatError(f"line {lineno}: negative value")
                assigned[e] = c
            elif parts[0] == "s" and len(parts) == 7 and parts[1] == "colored":
                total, k = int(parts[4]), int(parts[6])
            else:
                raise ColoringFormatError(f"line {lineno}: unrecognised line {line!r}")
        except ValueError as exc:
            if isinstance(exc, ColoringFormatError):
                raise
            raise ColoringFormatError(f"line {lineno}: {exc}") from exc
    if k is None or total is None:
        raise ColoringFormatError("missing summary line 's colored <c> total <m> k <k>'")
    m = g.m if g is not None else total
    if total != m:
        raise ColoringFormatError(f"summary says {total} edges, graph has {m}")
    if sorted(assigned) != list(range(m)):
        raise ColoringFormatError("edge ids must be exactly 0..m-1, one line each")
    return PartialColoring(k, tuple(assigned[e] or None for e in range(m)))

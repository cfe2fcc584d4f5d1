"""Undirected loopless multigraphs with stable edge ids."""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

FAMILIES = ("cK3", "cK3PlusE", "cK3MinusE", "joinedTwins", "petersen")


class GraphFormatError(ValueError):
    """Raised when an edge-list file cannot be parsed."""


@dataclass(frozen=True)
class Multigraph:
    """A multigraph on vertices ``0..n-1``.

    ``edges[i]`` is the endpoint pair of the edge with id ``i``; parallel
    edges are separate entries. Loops are rejected.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _incident: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _mult: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        incident: list[list[int]] = [[] for _ in range(self.n)]
        mult: dict[tuple[int, int], int] = {}
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid} = ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise ValueError(f"edge {eid} is a self-loop at {u}")
            incident[u].append(eid)
            incident[v].append(eid)
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_incident", tuple(tuple(x) for x in incident))
        object.__setattr__(self, "_mult", mult)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Multigraph:
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids incident with ``v``, ascending."""
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def other(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        return w if u == v else u

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self._mult.get(key, 0)

    def max_multiplicity(self) -> int:
        return max(self._mult.values(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.other(e, v) for e in self._incident[v]})

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._incident[u] if self.other(e, u) == v]

    def edges_inside(self, vs: Iterable[int]) -> list[int]:
        s = set(vs)
        return [e for e, (u, v) in enumerate(self.edges) if u in s and v in s]

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for e in self._incident[x]:
                    y = self.other(e, x)
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph(self, edge_ids: Iterable[int]) -> tuple[Multigraph, list[int], list[int]]:
        """Edge-induced subgraph on the endpoints of ``edge_ids``.

        Returns ``(sub, vertex_map, edge_map)`` where ``vertex_map[i]`` and
        ``edge_map[j]`` give the host vertex / edge id of sub-vertex ``i`` and
        sub-edge ``j``. Edges keep their relative id order.
        """
        eids = sorted(set(edge_ids))
        verts = sorted({x for e in eids for x in self.edges[e]})
        index = {v: i for i, v in enumerate(verts)}
        sub = Multigraph(len(verts), tuple((index[self.edges[e][0]], index[self.edges[e][1]]) for e in eids))
        return sub, verts, eids

    def induced(self, vs: Iterable[int]) -> tuple[Multigraph, list[int], list[int]]:
        """Vertex-induced subgraph; same return convention as :meth:`subgraph`."""
        verts = sorted(set(vs))
        index = {v: i for i, v in enumerate(verts)}
        eids = self.edges_inside(verts)
        sub = Multigraph(len(verts), tuple((index[self.edges[e][0]], index[self.edges[e][1]]) for e in eids))
        return sub, verts, eids


def max_degree(g: Multigraph) -> int:
    return max((g.degree(v) for v in g.vertices()), default=0)


def max_triangle_density(g: Multigraph) -> int:
    """Largest number of edges spanned by any three vertices.

    For graphs with fewer than three vertices this is the largest pair
    multiplicity (0 if there is no edge).
    """
    if g.n < 3:
        return g.max_multiplicity()
    mu = [[0] * g.n for _ in range(g.n)]
    for (u, v), k in g._mult.items():
        mu[u][v] = mu[v][u] = k
    best = 0
    for a, b, c in combinations(range(g.n), 3):
        s = mu[a][b] + mu[a][c] + mu[b][c]
        if s > best:
            best = s
    return best


def _triples_with(g: Multigraph, c: int, extra: bool) -> tuple[int, int, int] | None:
    if c < 1:
        raise ValueError("c must be at least 1")
    for tri in combinations(range(g.n), 3):
        a, b, d = tri
        ms = (g.multiplicity(a, b), g.multiplicity(a, d), g.multiplicity(b, d))
        if min(ms) >= c and (not extra or max(ms) >= c + 1):
            return tri
    return None


def contains_ck3(g: Multigraph, c: int) -> tuple[int, int, int] | None:
    """A vertex triple whose three pairs each carry at least ``c`` edges."""
    return _triples_with(g, c, extra=False)


def contains_ck3_plus_e(g: Multigraph, c: int) -> tuple[int, int, int] | None:
    """Like :func:`contains_ck3`, with one pair carrying at least ``c + 1``."""
    return _triples_with(g, c, extra=True)


def _ck3_edges(c: int, offset: int = 0) -> list[tuple[int, int]]:
    a, b, d = offset, offset + 1, offset + 2
    return [(a, b)] * c + [(a, d)] * c + [(b, d)] * c


def generate(family: str, c: int = 1) -> Multigraph:
    """Build a named instance.

    ``cK3``: three vertices, every pair joined by ``c`` edges.
    ``cK3PlusE``: ``cK3`` plus one more edge on the pair (0, 1).
    ``cK3MinusE``: ``cK3`` with one (1, 2) edge removed.
    ``joinedTwins``: two copies of ``cK3PlusE`` whose degree-``2c`` vertices
    (vertex 2 and vertex 5) are joined by an edge; 6 vertices.
    ``petersen``: the Petersen graph (``c`` ignored).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Multigraph(10, tuple(outer + spokes + inner))
    if c < 1:
        raise ValueError("family parameter must be at least 1")
    if family == "cK3":
        return Multigraph(3, tuple(_ck3_edges(c)))
    if family == "cK3PlusE":
        return Multigraph(3, tuple(_ck3_edges(c) + [(0, 1)]))
    if family == "cK3MinusE":
        edges = _ck3_edges(c)
        edges.remove((1, 2))
        return Multigraph(3, tuple(edges))
    twin = _ck3_edges(c) + [(0, 1)]
    other = [(u + 3, v + 3) for u, v in twin]
    return Multigraph(6, tuple(twin + other + [(2, 5)]))


def random_multigraph(
    rng: random.Random, n: int, m: int, max_deg: int | None = None, attempts: int = 50
) -> Multigraph:
    """Random multigraph with ``n`` vertices and up to ``m`` edges.

    Endpoint pairs are drawn uniformly; a pair that would push a vertex past
    ``max_deg`` is redrawn (at most ``attempts`` times per edge, after which
    the edge is skipped).
    """
    if n < 2:
        return Multigraph(max(n, 0), ())
    deg = [0] * n
    edges: list[tuple[int, int]] = []
    for _ in range(m):
        for _ in range(attempts):
            u, v = rng.sample(range(n), 2)
            if max_deg is None or (deg[u] < max_deg and deg[v] < max_deg):
                edges.append((min(u, v), max(u, v)))
                deg[u] += 1
                deg[v] += 1
                break
    return Multigraph(n, tuple(edges))


def parse_edge_list(text: str) -> Multigraph:
    """Parse the ``p multigraph <n> <m>`` / ``e <u> <v>`` format (1-based)."""
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate header")
                if len(parts) != 4 or parts[1] != "multigraph":
                    raise GraphFormatError(f"line {lineno}: malformed header {line!r}")
                n, m = int(parts[2]), int(parts[3])
                if n < 0 or m < 0:
                    raise GraphFormatError(f"line {lineno}: negative size in header")
            elif parts[0] == "e":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: malformed edge {line!r}")
                u, v = int(parts[1]), int(parts[2])
                if not (1 <= u <= n and 1 <= v <= n):
                    raise GraphFormatError(f"line {lineno}: vertex out of range in {line!r}")
                if u == v:
                    raise GraphFormatError(f"line {lineno}: self-loop {line!r}")
                edges.append((u - 1, v - 1))
            else:
                raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise GraphFormatError("missing 'p multigraph <n> <m>' header")
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    return Multigraph(n, tuple(edges))


def read_edge_list(path: str | Path) -> Multigraph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(g: Multigraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"p multigraph {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"

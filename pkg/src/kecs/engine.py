"""Potential-maximizing local search for partial k-edge-colorings.

The engine keeps a proper partial coloring and only ever replaces it by one
with a strictly larger potential (colored count first, then the numbers of
free components by decreasing size). Improvements come from, in order:

* direct coloring and single Kempe-swap augmentation of an uncolored edge;
* scripted repairs of structural violations found by :func:`certify`
  (checks C1..C5, see :class:`Violation`);
* a bounded breadth-first search over compositions of elementary moves of
  one free component, testing every reached state for an augmentation or a
  merge with another nontrivial component.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass, field

from .coloring import FreeComponent, PartialColoring, Potential, potential_from_components
from .multigraph import Multigraph, max_degree
from .oracle import dense_blocks

log = logging.getLogger(__name__)

DEFAULT_STATE_CAP = 4096

CHECKS = ("C1", "C2", "C3", "C4", "C5")


class RepairFailed(RuntimeError):
    """The scripted repair for a violation did not raise the potential."""


def default_budget(k: int) -> int:
    return max(2, 2 * (k // 2))


class _Work:
    """Mutable coloring with per-vertex color -> edge lookup (0 = uncolored)."""

    __slots__ = ("g", "k", "col", "at", "ncolored")

    def __init__(self, g: Multigraph, k: int, col: list[int]):
        self.g = g
        self.k = k
        self.col = col
        self.at: list[dict[int, int]] = [{} for _ in range(g.n)]
        self.ncolored = 0
        for e, c in enumerate(col):
            if c:
                u, v = g.edges[e]
                self.at[u][c] = e
                self.at[v][c] = e
                self.ncolored += 1

    @classmethod
    def of(cls, g: Multigraph, pc: PartialColoring) -> _Work:
        return cls(g, pc.k, [c or 0 for c in pc.colors])

    def freeze(self) -> PartialColoring:
        return PartialColoring(self.k, tuple(c or None for c in self.col))

    def copy(self) -> _Work:
        w = _Work.__new__(_Work)
        w.g, w.k, w.col, w.ncolored = self.g, self.k, list(self.col), self.ncolored
        w.at = [dict(d) for d in self.at]
        return w

    def key(self) -> tuple[int, ...]:
        return tuple(self.col)

    def free(self, v: int) -> list[int]:
        used = self.at[v]
        return [c for c in range(1, self.k + 1) if c not in used]

    def is_free(self, v: int, c: int) -> bool:
        return c not in self.at[v]

    def paint(self, e: int, c: int) -> None:
        old = self.col[e]
        if old == c:
            return
        u, v = self.g.edges[e]
        if old:
            del self.at[u][old]
            del self.at[v][old]
            self.ncolored -= 1
        if c:
            self.at[u][c] = e
            self.at[v][c] = e
            self.ncolored += 1
        self.col[e] = c

    def chain(self, start: int, a: int, b: int) -> tuple[list[int], list[int]]:
        """Edges and path endpoints of the a/b Kempe chain through ``start``."""
        g = self.g
        seen = {start}
        stack = [start]
        edges: set[int] = set()
        while stack:
            x = stack.pop()
            for c in (a, b):
                e = self.at[x].get(c)
                if e is None:
                    continue
                edges.add(e)
                y = g.other(e, x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        ends = sorted(x for x in seen if (a in self.at[x]) != (b in self.at[x]) or not self.at[x].keys() & {a, b})
        return sorted(edges), ends

    def swap(self, edges: list[int], a: int, b: int) -> None:
        new = {e: (b if self.col[e] == a else a) for e in edges}
        for e in edges:
            self.paint(e, 0)
        for e in edges:
            self.paint(e, new[e])

    def components(self) -> list[FreeComponent]:
        g = self.g
        parent = list(range(g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        members = {v for v in range(g.n) if len(self.at[v]) < self.k}
        unc = [e for e, c in enumerate(self.col) if not c]
        for e in unc:
            u, v = g.edges[e]
            members.add(u)
            members.add(v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        verts: dict[int, list[int]] = {}
        for v in sorted(members):
            verts.setdefault(find(v), []).append(v)
        edges: dict[int, list[int]] = {}
        for e in unc:
            edges.setdefault(find(g.edges[e][0]), []).append(e)
        out = []
        for root in sorted(verts, key=lambda r: verts[r][0]):
            vs = verts[root]
            fc = frozenset(c for v in vs for c in self.free(v))
            out.append(FreeComponent(tuple(vs), tuple(edges.get(root, ())), fc))
        return out

    def potential(self, comps: list[FreeComponent] | None = None) -> Potential:
        if comps is None:
            comps = self.components()
        return potential_from_components(self.ncolored, comps, self.k)


# --------------------------------------------------------------------------
# seeding and augmentation


def greedy_color(g: Multigraph, k: int) -> PartialColoring:
    """Color edges in id order with the least color free at both endpoints."""
    if k < 1:
        raise ValueError("palette size must be at least 1")
    w = _Work(g, k, [0] * g.m)
    for e in range(g.m):
        _color_direct(w, e)
    return w.freeze()


def _color_direct(w: _Work, e: int) -> bool:
    u, v = w.g.edges[e]
    au, av = w.at[u], w.at[v]
    for c in range(1, w.k + 1):
        if c not in au and c not in av:
            w.paint(e, c)
            return True
    return False


def _try_augment(w: _Work, e: int) -> bool:
    if _color_direct(w, e):
        return True
    u, v = w.g.edges[e]
    for a in w.free(u):
        for b in w.free(v):
            edges, ends = w.chain(u, a, b)
            if v in ends and edges:
                continue
            w.swap(edges, a, b)
            if w.is_free(u, b) and w.is_free(v, b):
                w.paint(e, b)
                return True
            w.swap(edges, a, b)
    return False


def kempe_swap(g: Multigraph, col: PartialColoring, start: int, a: int, b: int) -> PartialColoring:
    """Exchange colors ``a`` and ``b`` on the a/b chain through ``start``."""
    if a == b:
        raise ValueError("Kempe swap needs two distinct colors")
    w = _Work.of(g, col)
    edges, _ = w.chain(start, a, b)
    w.swap(edges, a, b)
    return w.freeze()


def try_augment(g: Multigraph, col: PartialColoring, e: int) -> PartialColoring | None:
    """Color the uncolored edge ``e`` directly or after one Kempe swap."""
    if col.colors[e] is not None:
        raise ValueError(f"edge {e} is already colored")
    w = _Work.of(g, col)
    return w.freeze() if _try_augment(w, e) else None


def _uncolored_path(w: _Work, comp_edges: set[int], s: int, t: int) -> list[tuple[int, int]]:
    """Shortest s-t path over ``comp_edges`` as (edge, next vertex) steps."""
    g = w.g
    prev: dict[int, tuple[int, int]] = {s: (-1, -1)}
    q = deque([s])
    while q:
        x = q.popleft()
        if x == t:
            break
        for e in g.incident(x):
            if e in comp_edges:
                y = g.other(e, x)
                if y not in prev:
                    prev[y] = (e, x)
                    q.append(y)
    if t not in prev:
        return []
    steps = []
    y = t
    while y != s:
        e, x = prev[y]
        steps.append((e, y))
        y = x
    return steps[::-1]


def _augment_pair(w: _Work, v: int, t: int, a: int) -> bool:
    """Color one more edge given ``a`` free at two vertices of one free component.

    Walks the uncolored v-t path; at each step either the next edge takes
    ``a`` or an a/b swap at the next vertex moves the shared color one step
    closer to ``t``.
    """
    unc = {e for e, c in enumerate(w.col) if not c}
    path = _uncolored_path(w, unc, v, t)
    if not path or not (w.is_free(v, a) and w.is_free(t, a)):
        return False
    while True:
        e0, x1 = path[0]
        if w.is_free(x1, a):
            w.paint(e0, a)
            return True
        spare = w.free(x1)
        if not spare:
            return False
        b = spare[0]
        edges, ends = w.chain(x1, a, b)
        w.swap(edges, a, b)
        if v not in ends:
            w.paint(e0, a)
            return True
        v = x1
        path = path[1:]


def _shared_pair(w: _Work, q: FreeComponent) -> tuple[int, int, int] | None:
    seen: dict[int, int] = {}
    for v in q.vertices:
        for c in w.free(v):
            if c in seen:
                return seen[c], v, c
            seen[c] = v
    return None


def _greedy_improve(w: _Work) -> None:
    """Apply augmentations until none of the cheap rules fires."""
    changed = True
    while changed:
        changed = False
        for e in range(w.g.m):
            if not w.col[e] and _try_augment(w, e):
                changed = True
        if changed:
            continue
        for q in w.components():
            if q.size == 0:
                continue
            hit = _shared_pair(w, q)
            if hit and _augment_pair(w, hit[0], hit[1], hit[2]):
                changed = True
                break


# --------------------------------------------------------------------------
# elementary moves


@dataclass(frozen=True)
class ElementaryMove:
    """Net effect of a composition of single-edge elementary moves.

    ``uncolored`` edges lose their color, ``colored`` pairs give formerly
    uncolored edges a color; ``recolored`` (only in compositions) lists edges
    colored before and after but with a different color.
    """

    component: tuple[int, ...]
    uncolored: tuple[int, ...] = ()
    colored: tuple[tuple[int, int], ...] = ()
    recolored: tuple[tuple[int, int], ...] = ()
    length: int = 0

    def apply(self, col: PartialColoring) -> PartialColoring:
        changes: dict[int, int | None] = {e: None for e in self.uncolored}
        changes.update(dict(self.colored))
        changes.update(dict(self.recolored))
        return col.with_colors(changes)


def _connected_edges(g: Multigraph, edges: list[int]) -> bool:
    if not edges:
        return False
    adj: dict[int, list[int]] = {}
    for e in edges:
        u, v = g.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def _single_moves(w: _Work, comp_vertices: tuple[int, ...], comp_edges: tuple[int, ...]) -> Iterator[tuple[int, int, int]]:
    """Yield ``(f, e, a)``: uncolor ``f`` (color ``a``) and give ``e`` color ``a``.

    ``f`` is a colored edge at a vertex of the component, ``e`` one of its
    uncolored edges, and afterwards the uncolored edges of the component's
    neighbourhood still form one connected piece.
    """
    g = w.g
    seen_f: set[int] = set()
    for x in comp_vertices:
        for f in g.incident(x):
            a = w.col[f]
            if not a or f in seen_f:
                continue
            seen_f.add(f)
            for e in comp_edges:
                if not all(w.at[y].get(a, f) == f for y in g.edges[e]):
                    continue
                rest = [x2 for x2 in comp_edges if x2 != e] + [f]
                if _connected_edges(g, rest):
                    yield f, e, a


def _component_of(comps: list[FreeComponent], v: int) -> FreeComponent | None:
    for q in comps:
        if v in q.vertices:
            return q
    return None


def _apply_single(w: _Work, f: int, e: int, a: int) -> None:
    w.paint(f, 0)
    w.paint(e, a)


def _net_move(origin: _Work, state: _Work, comp: tuple[int, ...], length: int) -> ElementaryMove:
    unc, col, rec = [], [], []
    for e, (c0, c1) in enumerate(zip(origin.col, state.col)):
        if c0 == c1:
            continue
        if not c1:
            unc.append(e)
        elif not c0:
            col.append((e, c1))
        else:
            rec.append((e, c1))
    return ElementaryMove(comp, tuple(unc), tuple(col), tuple(rec), length)


def _bfs_moves(w: _Work, q: FreeComponent, budget: int, cap: int) -> Iterator[tuple[_Work, FreeComponent, list[FreeComponent], int]]:
    """Breadth-first states reachable by moving ``q`` (excluding the start).

    Yields ``(state, moved component, all components, depth)``.
    """
    if budget <= 0 or q.size == 0:
        return
    seen = {w.key()}
    frontier = deque([(w, q, 0)])
    while frontier:
        cur, comp, depth = frontier.popleft()
        for f, e, a in list(_single_moves(cur, comp.vertices, comp.edges)):
            nxt = cur.copy()
            _apply_single(nxt, f, e, a)
            key = nxt.key()
            if key in seen:
                continue
            seen.add(key)
            comps = nxt.components()
            moved = _component_of(comps, w.g.edges[f][0])
            assert moved is not None
            yield nxt, moved, comps, depth + 1
            if len(seen) >= cap:
                return
            if depth + 1 < budget:
                frontier.append((nxt, moved, depth + 1))


def enumerate_elementary_moves(
    g: Multigraph, col: PartialColoring, p: FreeComponent, budget: int, cap: int = DEFAULT_STATE_CAP
) -> list[ElementaryMove]:
    """Distinct moves of ``p`` reachable by at most ``budget`` single-edge moves.

    The identity move comes first; the rest follow in breadth-first order.
    """
    w = _Work.of(g, col)
    out = [ElementaryMove(p.vertices)]
    for state, _, _, depth in _bfs_moves(w, p, budget, cap):
        out.append(_net_move(w, state, p.vertices, depth))
    return out


# --------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class Violation:
    """One failed structural check.

    ``check`` is C1 (two vertices of a component share a free color), C2
    (a component too large for its free colors), C3 (a component sees
    another one sharing a free color), C4 (two vertices reachable by
    one-edge moves share a free color) or C5 (a move merges two nontrivial
    components). ``witness`` holds the check-specific data.
    """

    check: str
    component: tuple[int, ...]
    witness: dict = field(default_factory=dict, compare=False)

    def describe(self) -> str:
        items = " ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.check} component={list(self.component)} {items}".rstrip()


@dataclass(frozen=True)
class Certification:
    violations: tuple[Violation, ...] = ()
    budget: int = 0
    uncertified: bool = False
    notes: tuple[str, ...] = ()

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations


def _check_c1_c2(w: _Work, comps: list[FreeComponent]) -> list[Violation]:
    out = []
    cap = w.k // 2
    for q in comps:
        if q.size == 0:
            continue
        hit = _shared_pair(w, q)
        if hit:
            out.append(Violation("C1", q.vertices, {"v": hit[0], "w": hit[1], "color": hit[2]}))
        nfree = len(q.free)
        if q.size > cap or nfree < 2 * q.size:
            out.append(Violation("C2", q.vertices, {"edges": q.size, "free": nfree, "cap": cap}))
    return out


def _check_c3(w: _Work, comps: list[FreeComponent]) -> list[Violation]:
    g = w.g
    owner = {}
    for i, q in enumerate(comps):
        for v in q.vertices:
            owner[v] = i
    out = []
    for i, q in enumerate(comps):
        for x in q.vertices:
            for e in g.incident(x):
                c = w.col[e]
                if not c or c not in q.free:
                    continue
                y = g.other(e, x)
                j = owner.get(y)
                if j is None or j == i:
                    continue
                shared = sorted(q.free & comps[j].free)
                if shared:
                    out.append(Violation("C3", q.vertices, {"other": comps[j].vertices, "edge": e, "color": shared[0]}))
    return out


def con1(g: Multigraph, col: PartialColoring, q: FreeComponent) -> dict[int, ElementaryMove]:
    """Vertices reachable by single-edge moves of ``q``, each with a witnessing move."""
    return _con1(_Work.of(g, col), q)


def _con1(w: _Work, q: FreeComponent) -> dict[int, ElementaryMove]:
    reach: dict[int, ElementaryMove] = {v: ElementaryMove(q.vertices) for v in q.vertices}
    for f, e, a in _single_moves(w, q.vertices, q.edges):
        nxt = w.copy()
        _apply_single(nxt, f, e, a)
        moved = _component_of(nxt.components(), w.g.edges[f][0])
        if moved is None:
            continue
        mv = ElementaryMove(q.vertices, (f,), ((e, a),), (), 1)
        for v in moved.vertices:
            reach.setdefault(v, mv)
    return reach


def _check_c4(w: _Work, comps: list[FreeComponent]) -> list[Violation]:
    out = []
    for q in comps:
        if q.size < 2:
            continue
        reach = _con1(w, q)
        seen: dict[int, int] = {}
        for v in sorted(reach):
            for c in w.free(v):
                if c in seen:
                    u = seen[c]
                    out.append(Violation("C4", q.vertices, {"u": u, "v": v, "color": c, "moves": (reach[u], reach[v])}))
                    break
                seen[c] = v
            else:
                continue
            break
    return out


def _find_merge(w: _Work, comps: list[FreeComponent], budget: int, cap: int) -> Violation | None:
    for q in comps:
        if q.size == 0:
            continue
        for state, moved, _, depth in _bfs_moves(w, q, budget, cap):
            if moved.size > q.size:
                return Violation("C5", q.vertices, {"move": _net_move(w, state, q.vertices, depth), "merged": moved.size})
    return None


def certify(
    g: Multigraph, col: PartialColoring, budget: int | None = None, cap: int = DEFAULT_STATE_CAP
) -> Certification:
    """Run checks C1..C5; C5 explores move compositions up to ``budget``."""
    if budget is None:
        budget = default_budget(col.k)
    w = _Work.of(g, col)
    comps = w.components()
    viol = _check_c1_c2(w, comps) + _check_c3(w, comps) + _check_c4(w, comps)
    merge = _find_merge(w, comps, budget, cap)
    if merge:
        viol.append(merge)
    return Certification(tuple(viol), budget)


# --------------------------------------------------------------------------
# repairs


def _repair_work(w: _Work, v: Violation) -> _Work:
    before = w.potential()
    for cand in _repair_candidates(w, v):
        _greedy_improve(cand)
        if cand.potential() > before:
            return cand
    raise RepairFailed(f"no potential increase for {v.describe()}")


def _apply_if_valid(cand: _Work, origin: _Work, mv: ElementaryMove) -> bool:
    """Replay a single-edge move recorded against ``origin`` onto ``cand``."""
    if any(cand.col[e] != origin.col[e] or not cand.col[e] for e in mv.uncolored):
        return False
    for e in mv.uncolored:
        cand.paint(e, 0)
    for e, c in mv.colored:
        if cand.col[e] or not all(cand.is_free(y, c) for y in cand.g.edges[e]):
            return False
        cand.paint(e, c)
    return True


def _repair_candidates(w: _Work, v: Violation) -> Iterator[_Work]:
    g = w.g
    wit = v.witness
    if v.check == "C1":
        cand = w.copy()
        if _augment_pair(cand, wit["v"], wit["w"], wit["color"]):
            yield cand
    elif v.check == "C2":
        inside = set(v.component)
        for e in range(g.m):
            if not w.col[e] and set(g.edges[e]) <= inside:
                cand = w.copy()
                if _try_augment(cand, e):
                    yield cand
        cand = w.copy()
        q = _component_of(cand.components(), v.component[0])
        if q is not None:
            hit = _shared_pair(cand, q)
            if hit and _augment_pair(cand, *hit):
                yield cand
    elif v.check == "C3":
        cand = w.copy()
        cand.paint(wit["edge"], 0)
        yield cand
    elif v.check == "C4":
        moves: tuple[ElementaryMove, ElementaryMove] = wit["moves"]
        for mv in moves:
            cand = w.copy()
            if _apply_if_valid(cand, w, mv):
                yield cand
        # shared color outside the component: pull it inside with one swap first
        a = wit["color"]
        held = {w.col[e] for mv in moves for e in mv.uncolored}
        for z in v.component:
            if w.is_free(z, a):
                continue
            for b in w.free(z):
                if b in held:
                    continue
                for mv in moves:
                    cand = w.copy()
                    edges, _ = cand.chain(z, a, b)
                    cand.swap(edges, a, b)
                    if _apply_if_valid(cand, w, mv):
                        yield cand
    elif v.check == "C5":
        mv: ElementaryMove = wit["move"]
        cand = w.copy()
        for e in mv.uncolored:
            cand.paint(e, 0)
        for e, c in list(mv.recolored) + list(mv.colored):
            cand.paint(e, 0)
        for e, c in list(mv.recolored) + list(mv.colored):
            cand.paint(e, c)
        yield cand


def repair(g: Multigraph, col: PartialColoring, violation: Violation) -> PartialColoring:
    """Coloring with strictly larger potential derived from ``violation``.

    Raises :class:`RepairFailed` when the scripted steps do not improve it.
    """
    return _repair_work(_Work.of(g, col), violation).freeze()


# --------------------------------------------------------------------------
# main loop


def _search(w: _Work, budget: int, cap: int) -> tuple[_Work, str] | None:
    before = w.potential()
    for q in w.components():
        if q.size == 0:
            continue
        for state, moved, comps, _ in _bfs_moves(w, q, budget, cap):
            if state.potential(comps) > before:
                return state, "merge"
            for e in moved.edges:
                cand = state.copy()
                if _try_augment(cand, e):
                    return cand, "move+augment"
            hit = _shared_pair(state, moved)
            if hit:
                cand = state.copy()
                if _augment_pair(cand, *hit):
                    return cand, "move+pair"
    return None


def _report(old: Potential, new: Potential, rule: str) -> None:
    log.info("%s -> %s %s", old, new, rule)


def colorable_upper_bound(g: Multigraph, k: int) -> int:
    """Cheap upper bound on the number of ``k``-colorable edges.

    Minimum of ``m``, half the capped degree sum, and a packing bound where
    each dense pair or triple contributes at most ``k`` edges.
    """
    deg = sum(min(k, g.degree(v)) for v in g.vertices()) // 2
    blocks = dense_blocks(g, k)
    inside = {e for blk in blocks for e in g.edges_inside(blk)}
    packed = g.m - len(inside) + sum(min(k, len(g.edges_inside(blk))) for blk in blocks)
    return min(g.m, deg, packed)


def maximize_potential(
    g: Multigraph,
    k: int | None = None,
    budget: int | None = None,
    start: PartialColoring | None = None,
    cap: int = DEFAULT_STATE_CAP,
) -> tuple[PartialColoring, Certification]:
    """Drive a partial ``k``-coloring to a certified local potential maximum.

    ``start`` defaults to :func:`greedy_color`. ``budget`` bounds the length
    of move compositions explored (default ``2 * (k // 2)``).
    """
    if k is None:
        k = max(1, max_degree(g))
    if budget is None:
        budget = default_budget(k)
    w = _Work.of(g, start) if start is not None else _Work.of(g, greedy_color(g, k))
    if w.k != k:
        raise ValueError("start coloring uses a different palette")
    ub = colorable_upper_bound(g, k)
    failed: list[Violation] = []
    while True:
        before = w.potential()
        for e in range(g.m):
            if not w.col[e] and _try_augment(w, e):
                pass
        now = w.potential()
        if now > before:
            _report(before, now, "augment")
            continue
        comps = w.components()
        viol = _check_c1_c2(w, comps) + _check_c3(w, comps) + _check_c4(w, comps)
        improved = False
        failed = []
        for v in viol:
            try:
                nw = _repair_work(w, v)
            except RepairFailed:
                failed.append(v)
                continue
            _report(before, nw.potential(), f"repair {v.check}")
            w = nw
            improved = True
            break
        if improved:
            continue
        if w.ncolored >= ub and not failed:
            break
        found = _search(w, budget, cap)
        if found is None:
            break
        nw, rule = found
        _report(before, nw.potential(), rule)
        w = nw
    final = w.freeze()
    comps = w.components()
    viol = _check_c1_c2(w, comps) + _check_c3(w, comps) + _check_c4(w, comps)
    notes: tuple[str, ...] = ()
    if w.ncolored >= ub:
        notes = ("colored count meets the degree upper bound; move search skipped",)
    else:
        merge = _find_merge(w, comps, budget, cap)
        if merge:
            viol.append(merge)
    return final, Certification(tuple(viol), budget, notes=notes)

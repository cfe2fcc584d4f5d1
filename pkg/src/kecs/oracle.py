"""Exact maximum k-edge-colorable subgraph by branch and bound.

Only meant for desk-size instances (a few dozen edges at most). Edges are
branched in fail-first order: descending pair multiplicity, then descending
endpoint degree sum, then id. Each edge either takes a color consistent with
its already-colored neighbours or is dropped. Colors are interchangeable, so
an edge may only open the smallest color not used anywhere so far.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .coloring import PartialColoring
from .multigraph import Multigraph

DEFAULT_NODE_CAP = 10**7


class NodeCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    opt: int
    witness: PartialColoring
    nodes: int


def branch_order(g: Multigraph) -> list[int]:
    return sorted(
        range(g.m),
        key=lambda e: (-g.multiplicity(*g.edges[e]), -(g.degree(g.edges[e][0]) + g.degree(g.edges[e][1])), e),
    )


def _greedy(g: Multigraph, k: int, order: list[int]) -> list[int]:
    used = [0] * g.n
    cols = [0] * g.m
    for e in order:
        u, v = g.edges[e]
        busy = used[u] | used[v]
        for c in range(k):
            if not busy >> c & 1:
                cols[e] = c + 1
                used[u] |= 1 << c
                used[v] |= 1 << c
                break
    return cols


def dense_blocks(g: Multigraph, k: int) -> list[tuple[int, ...]]:
    """Disjoint vertex pairs/triples spanning more than ``k`` edges.

    Any two edges inside a block of at most three vertices share an
    endpoint, so at most ``k`` of them can be colored; the search uses this
    as an additional upper bound.
    """
    cands = []
    for tri in combinations(range(g.n), 3):
        cnt = len(g.edges_inside(tri))
        if cnt > k:
            cands.append((-cnt, tri))
    for u, v in combinations(range(g.n), 2):
        cnt = g.multiplicity(u, v)
        if cnt > k:
            cands.append((-cnt, (u, v)))
    cands.sort()
    taken: set[int] = set()
    out = []
    for _, blk in cands:
        if taken.isdisjoint(blk):
            taken.update(blk)
            out.append(blk)
    return out


class _Search:
    def __init__(self, g: Multigraph, k: int, node_cap: int, order: list[int]):
        self.g = g
        self.k = k
        self.cap = node_cap
        self.order = order
        self.ends = [g.edges[e] for e in order]
        self.nodes = 0
        self.used = [0] * g.n
        self.rem = [0] * g.n
        for u, v in self.ends:
            self.rem[u] += 1
            self.rem[v] += 1
        self.assign = [0] * len(order)
        self.blocks = dense_blocks(g, k)
        block_of = {}
        for b, vs in enumerate(self.blocks):
            for v in vs:
                block_of[v] = b
        self.edge_block = []
        for u, v in self.ends:
            bu, bv = block_of.get(u, -1), block_of.get(v, -1)
            self.edge_block.append(bu if bu == bv else -1)
        self.block_rem = [0] * len(self.blocks)
        self.block_used = [0] * len(self.blocks)
        self.cross_rem = 0
        for b in self.edge_block:
            if b < 0:
                self.cross_rem += 1
            else:
                self.block_rem[b] += 1
        self.best = -1
        self.best_assign: list[int] = []

    def seed(self, value: int, assign: list[int]) -> None:
        self.best = value
        self.best_assign = list(assign)

    def _bound(self, i: int) -> int:
        k = self.k
        total = 0
        for v in range(self.g.n):
            r = self.rem[v]
            if r:
                free = k - self.used[v].bit_count()
                total += r if r < free else free
        left = len(self.ends) - i
        bound = min(left, total // 2)
        if self.blocks:
            packed = self.cross_rem
            for b, r in enumerate(self.block_rem):
                free = k - self.block_used[b].bit_count()
                packed += r if r < free else free
            bound = min(bound, packed)
        return bound

    def _take(self, i: int, sign: int) -> None:
        b = self.edge_block[i]
        if b < 0:
            self.cross_rem -= sign
        else:
            self.block_rem[b] -= sign

    def run(self, i: int, colored: int, top: int) -> None:
        self.nodes += 1
        if self.nodes > self.cap:
            raise NodeCapExceeded(f"node cap {self.cap} reached")
        if i == len(self.ends):
            if colored > self.best:
                self.best = colored
                self.best_assign = list(self.assign)
            return
        if colored + self._bound(i) <= self.best:
            return
        u, v = self.ends[i]
        used = self.used
        blk = self.edge_block[i]
        self.rem[u] -= 1
        self.rem[v] -= 1
        self._take(i, 1)
        busy = used[u] | used[v]
        limit = min(self.k, top + 1)
        for c in range(limit):
            bit = 1 << c
            if busy & bit:
                continue
            used[u] |= bit
            used[v] |= bit
            if blk >= 0:
                self.block_used[blk] |= bit
            self.assign[i] = c + 1
            self.run(i + 1, colored + 1, max(top, c + 1))
            used[u] ^= bit
            used[v] ^= bit
            if blk >= 0:
                self.block_used[blk] ^= bit
        self.assign[i] = 0
        self.run(i + 1, colored, top)
        self.rem[u] += 1
        self.rem[v] += 1
        self._take(i, -1)


def _to_coloring(g: Multigraph, k: int, order: list[int], assign: list[int]) -> PartialColoring:
    cols: list[int | None] = [None] * g.m
    for i, e in enumerate(order):
        cols[e] = assign[i] or None
    return PartialColoring(k, tuple(cols))


def _solve_prefix(args: tuple) -> tuple[int, list[int], int]:
    g, k, node_cap, order, prefix, lower = args
    s = _Search(g, k, node_cap, order)
    s.best = lower
    top = 0
    colored = 0
    for i, c in enumerate(prefix):
        u, v = s.ends[i]
        s.rem[u] -= 1
        s.rem[v] -= 1
        s._take(i, 1)
        if c:
            s.used[u] |= 1 << (c - 1)
            s.used[v] |= 1 << (c - 1)
            if s.edge_block[i] >= 0:
                s.block_used[s.edge_block[i]] |= 1 << (c - 1)
            colored += 1
            top = max(top, c)
        s.assign[i] = c
    s.run(len(prefix), colored, top)
    return s.best, s.best_assign, s.nodes


def _prefixes(g: Multigraph, k: int, order: list[int], depth: int) -> list[list[int]]:
    out: list[list[int]] = [[]]
    for i in range(min(depth, len(order))):
        u, v = g.edges[order[i]]
        nxt = []
        for p in out:
            busy = set()
            top = max(p, default=0)
            for j, c in enumerate(p):
                if c and set(g.edges[order[j]]) & {u, v}:
                    busy.add(c)
            for c in range(1, min(k, top + 1) + 1):
                if c not in busy:
                    nxt.append(p + [c])
            nxt.append(p + [0])
        out = nxt
    return out


def exact_max_kecs(g: Multigraph, k: int, node_cap: int = DEFAULT_NODE_CAP, jobs: int = 1) -> OracleResult:
    """Maximum number of edges of ``g`` colorable with ``k`` colors, with a witness.

    ``jobs > 1`` splits the first branching levels over worker processes;
    the optimum does not depend on the split, the node count does.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    order = branch_order(g)
    greedy = _greedy(g, k, order)
    lower = sum(1 for e in order if greedy[e])
    assign0 = [greedy[e] for e in order]
    if jobs <= 1 or g.m < 4:
        s = _Search(g, k, node_cap, order)
        s.seed(lower, assign0)
        s.run(0, 0, 0)
        return OracleResult(s.best, _to_coloring(g, k, order, s.best_assign), s.nodes)
    prefixes = _prefixes(g, k, order, 3)
    tasks = [(g, k, node_cap, order, p, lower) for p in prefixes]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_solve_prefix, tasks))
    best, best_assign, nodes = lower, assign0, 0
    for val, assign, cnt in results:
        nodes += cnt
        if val > best:
            best, best_assign = val, assign
    return OracleResult(best, _to_coloring(g, k, order, best_assign), nodes)

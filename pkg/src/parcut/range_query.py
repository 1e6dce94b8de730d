"""Weighted orthogonal range counting and the postorder-plane cut oracle.

The 1D/2D trees are complete b-ary structures with b = max(2, floor(n^eps));
queries climb level arrays instead of pointer-chasing nodes, and every
touched array slot counts as one "node visit" for the work-audit tests.

The cut oracle maps each graph edge (u, v, w) to the two plane points
(post(u), post(v)) and (post(v), post(u)). Every rectangle it issues is
one-sided (subtree range on one axis, a disjoint range on the other), so
each physical edge is counted exactly once per query despite the mirroring.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Sequence

from .graph_core import WeightedGraph
from .tree_decomp import (
    AncestorTable,
    PostorderIndex,
    RootedTree,
    root_and_index,
)


class OracleContractError(ValueError):
    """A query violated its ancestry/disjointness precondition."""


def _degree(count: int, epsilon: float, universe: int | None) -> int:
    base = universe if universe is not None else max(count, 2)
    return max(2, int(float(base) ** epsilon))


class RangeTree1D:
    """Weighted 1D range counting over integer keys.

    ``query(x1, x2)`` returns the total weight of points with key in
    [x1, x2]; inverted ranges return 0 by convention.
    """

    __slots__ = ("b", "keys", "levels", "height", "visits", "queries", "last_visits")

    def __init__(
        self,
        points: Sequence[tuple[int, int]],
        epsilon: float,
        universe: int | None = None,
    ) -> None:
        pts = sorted(points)
        self.b = _degree(len(pts), epsilon, universe)
        self.keys = [k for k, _ in pts]
        levels = [[w for _, w in pts]]
        while len(levels[-1]) > 1:
            prev = levels[-1]
            levels.append(
                [sum(prev[i : i + self.b]) for i in range(0, len(prev), self.b)]
            )
        self.levels = levels
        self.height = len(levels) - 1
        self.visits = 0
        self.queries = 0
        self.last_visits = 0

    @property
    def total(self) -> int:
        return self.levels[-1][0] if self.keys else 0

    def query(self, x1: int, x2: int) -> int:
        self.queries += 1
        self.last_visits = 0
        if x1 > x2 or not self.keys:
            return 0
        lo = bisect_left(self.keys, x1)
        hi = bisect_right(self.keys, x2) - 1
        if lo > hi:
            return 0
        total = 0
        visits = 0
        b = self.b
        for level in self.levels:
            lblock, rblock = lo // b, hi // b
            if lblock == rblock:
                total += sum(level[lo : hi + 1])
                visits += hi - lo + 1
                break
            left_end = min((lblock + 1) * b, len(level))
            total += sum(level[lo:left_end])
            visits += left_end - lo
            total += sum(level[rblock * b : hi + 1])
            visits += hi - rblock * b + 1
            lo, hi = lblock + 1, rblock - 1
            if lo > hi:
                break
        self.visits += visits
        self.last_visits = visits
        return total


class RangeTree2D:
    """Weighted rectangle counting: b-ary x-tree with per-node y-structures.

    Each internal x-node stores its leaf span sorted by y (the auxiliary
    array) and a :class:`RangeTree1D` over it. A rectangle query finds the
    canonical x-nodes covering [x1, x2] and issues one 1D query per node;
    boundary leaves are tested individually.
    """

    __slots__ = ("b", "xs", "ys", "ws", "aux", "height", "visits", "queries", "last_visits")

    def __init__(
        self,
        points: Sequence[tuple[int, int, int]],
        epsilon: float,
        universe: int | None = None,
    ) -> None:
        pts = sorted(points)
        self.b = _degree(len(pts), epsilon, universe)
        self.xs = [x for x, _, _ in pts]
        self.ys = [y for _, y, _ in pts]
        self.ws = [w for _, _, w in pts]
        b = self.b
        # aux[k][j] is the 1D y-tree of the level-(k+1) node j, whose span is
        # the leaf slice [j*b^(k+1), (j+1)*b^(k+1)).
        self.aux: list[list[RangeTree1D]] = []
        spans: list[list[tuple[int, int]]] = [
            [(y, w)] for y, w in zip(self.ys, self.ws)
        ]
        while len(spans) > 1:
            merged: list[list[tuple[int, int]]] = []
            for i in range(0, len(spans), b):
                block: list[tuple[int, int]] = []
                for piece in spans[i : i + b]:
                    block.extend(piece)
                block.sort()
                merged.append(block)
            self.aux.append(
                [RangeTree1D(block, epsilon, universe) for block in merged]
            )
            spans = merged
        self.height = len(self.aux)
        self.visits = 0
        self.queries = 0
        self.last_visits = 0

    def query(self, x1: int, x2: int, y1: int, y2: int) -> int:
        self.queries += 1
        self.last_visits = 0
        if x1 > x2 or y1 > y2 or not self.xs:
            return 0
        lo = bisect_left(self.xs, x1)
        hi = bisect_right(self.xs, x2) - 1
        if lo > hi:
            return 0
        total = 0
        visits = 0
        b = self.b
        # Level 0: boundary leaves are inspected individually.
        lblock, rblock = lo // b, hi // b
        if lblock == rblock:
            for i in range(lo, hi + 1):
                visits += 1
                if y1 <= self.ys[i] <= y2:
                    total += self.ws[i]
            self.visits += visits
            self.last_visits = visits
            return total
        left_end = min((lblock + 1) * b, len(self.xs))
        for i in list(range(lo, left_end)) + list(range(rblock * b, hi + 1)):
            visits += 1
            if y1 <= self.ys[i] <= y2:
                total += self.ws[i]
        lo, hi = lblock + 1, rblock - 1
        # Higher levels: full nodes are canonical, answered by their y-tree.
        for level in self.aux:
            if lo > hi:
                break
            lblock, rblock = lo // b, hi // b
            if lblock == rblock:
                canonical = range(lo, hi + 1)
                lo, hi = 1, 0  # nothing left above this level
            else:
                left_end = min((lblock + 1) * b, len(level))
                canonical = list(range(lo, left_end)) + list(
                    range(rblock * b, hi + 1)
                )
                lo, hi = lblock + 1, rblock - 1
            for j in canonical:
                visits += 1
                total += level[j].query(y1, y2)
                visits += level[j].last_visits
        self.visits += visits
        self.last_visits = visits
        return total


def build_1d(
    points: Sequence[tuple[int, int]], epsilon: float, universe: int | None = None
) -> RangeTree1D:
    return RangeTree1D(points, epsilon, universe)


def query_1d(t: RangeTree1D, x1: int, x2: int) -> int:
    return t.query(x1, x2)


def build_2d(
    points: Sequence[tuple[int, int, int]], epsilon: float, universe: int | None = None
) -> RangeTree2D:
    return RangeTree2D(points, epsilon, universe)


def query_2d(t: RangeTree2D, x1: int, x2: int, y1: int, y2: int) -> int:
    return t.query(x1, x2, y1, y2)


# ---------------------------------------------------------------------------
# Cut oracle.


@dataclass
class OracleStats:
    cut_queries: int = 0
    max_depth: int = 0


@dataclass
class CutOracle:
    """Answers subtree-weight and cut questions for one spanning tree.

    Tree edges are identified by their lower endpoint (the one further from
    the root). ``cost`` values come from a subtree-aggregation table built in
    O(m + n); cross/down costs go to the 2D range tree over the mirrored
    postorder points.
    """

    tree: RootedTree
    idx: PostorderIndex
    rt: RangeTree2D
    cost_table: tuple[int, ...]
    stats: OracleStats = field(default_factory=OracleStats)

    @property
    def n(self) -> int:
        return self.tree.n


def build_cut_oracle(g: WeightedGraph, t: RootedTree, epsilon: float) -> CutOracle:
    """Index t, map g's edges to the postorder plane (mirrored), build trees.

    t must contain every vertex of g; it may hold extra (binarization)
    nodes, which simply carry no graph weight.
    """
    if t.n < g.n:
        raise ValueError("tree does not cover the graph's vertices")
    idx = root_and_index(t)
    post = idx.post
    points: list[tuple[int, int, int]] = []
    for u, v, w in g.edges:
        points.append((post[u], post[v], w))
        points.append((post[v], post[u], w))
    rt = RangeTree2D(points, epsilon, universe=t.n)

    # cost(v) = (sum of weighted degrees in the subtree) - 2 * (weight of
    # edges with both endpoints in the subtree); the latter bucketed at LCAs.
    anc = AncestorTable(t)
    wdeg = [0] * t.n
    lca_acc = [0] * t.n
    for u, v, w in g.edges:
        wdeg[u] += w
        wdeg[v] += w
        lca_acc[anc.lca(u, v)] += w
    pre_deg = [0] * (t.n + 1)
    pre_lca = [0] * (t.n + 1)
    for i, v in enumerate(idx.order):
        pre_deg[i + 1] = pre_deg[i] + wdeg[v]
        pre_lca[i + 1] = pre_lca[i] + lca_acc[v]
    cost = [0] * t.n
    for v in range(t.n):
        lo, hi = idx.start[v], idx.post[v]
        cost[v] = (pre_deg[hi + 1] - pre_deg[lo]) - 2 * (pre_lca[hi + 1] - pre_lca[lo])
    return CutOracle(t, idx, rt, tuple(cost))


def cost(o: CutOracle, u: int) -> int:
    """w(T_e) for e = (u, parent(u)): weight crossing u's subtree boundary."""
    if u == o.tree.root:
        raise OracleContractError("the root has no parent edge")
    return o.cost_table[u]


def cost_by_rectangles(o: CutOracle, u: int) -> int:
    """cost(u) recomputed from the two defining rectangle queries."""
    if u == o.tree.root:
        raise OracleContractError("the root has no parent edge")
    idx = o.idx
    lo, hi = idx.start[u], idx.post[u]
    n = o.n
    return o.rt.query(lo, hi, 0, lo - 1) + o.rt.query(lo, hi, hi + 1, n - 1)


def cross_cost(o: CutOracle, u: int, v: int) -> int:
    """w(T_u, T_v) for disjoint subtrees."""
    idx = o.idx
    if idx.in_subtree(u, v) or idx.in_subtree(v, u):
        raise OracleContractError("cross_cost needs disjoint subtrees")
    return o.rt.query(idx.start[v], idx.post[v], idx.start[u], idx.post[u])


def down_cost(o: CutOracle, u: int, v: int) -> int:
    """w(T_v, V - T_u) for v inside u's subtree."""
    idx = o.idx
    if not idx.in_subtree(u, v):
        raise OracleContractError("down_cost needs v inside u's subtree")
    lo, hi = idx.start[v], idx.post[v]
    ulo, uhi = idx.start[u], idx.post[u]
    n = o.n
    return o.rt.query(lo, hi, 0, ulo - 1) + o.rt.query(lo, hi, uhi + 1, n - 1)


def one_respecting_cost(o: CutOracle, e: int) -> int:
    """Value of the cut that removes only tree edge e (lower endpoint id)."""
    return cost(o, e)


def cut_query(o: CutOracle, e: int, f: int) -> int:
    """Weight of graph edges whose tree path contains exactly one of e, f.

    e and f are tree edges named by their lower endpoints; the ancestry case
    picks the matching composition formula.
    """
    if e == f:
        raise OracleContractError("cut_query needs two distinct tree edges")
    o.stats.cut_queries += 1
    idx = o.idx
    ce, cf = o.cost_table[e], o.cost_table[f]
    if idx.in_subtree(e, f):
        return ce + cf - 2 * down_cost(o, e, f)
    if idx.in_subtree(f, e):
        return ce + cf - 2 * down_cost(o, f, e)
    return ce + cf - 2 * cross_cost(o, e, f)


def cross_interested(o: CutOracle, e: int, f: int) -> bool:
    """w(T_e) < 2 w(T_e, T_f), for f disjoint from e's subtree."""
    return o.cost_table[e] < 2 * cross_cost(o, e, f)


def down_interested(o: CutOracle, e: int, f: int) -> bool:
    """w(T_e) < 2 w(T_f, V - T_e), for f inside e's subtree."""
    idx = o.idx
    if not idx.in_subtree(e, f) or e == f:
        raise OracleContractError("down_interested needs f inside e's subtree")
    return o.cost_table[e] < 2 * down_cost(o, e, f)

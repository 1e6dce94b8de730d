"""Minimum 2-respecting cut of a spanning tree.

Pipeline per tree: enumerate single-edge cuts, search each bough's pair
matrix (partial Monge) by divide and conquer, then find cross-path pairs by
centroid-guided interest search, Root-paths tuple generation, mutual-pair
grouping, and Monge searches over geometrically uniform blocks.

Interest comes in three flavors keyed to which side of the composed cut
formula improves on a single-edge cut: cross (disjoint subtrees), down
(partner inside the edge's subtree), and up (partner an ancestor edge). The
up flavor is what lets a nested optimal pair be discovered from both sides,
so its group passes the mutuality filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph_core import WeightedGraph
from .range_query import (
    CutOracle,
    OracleStats,
    build_cut_oracle,
    cost,
    cross_cost,
    cut_query,
    down_cost,
    one_respecting_cost,
)
from .tree_decomp import (
    AncestorTable,
    CentroidTree,
    PathPartition,
    PostorderIndex,
    RootedTree,
    binarize,
    bough_decomposition,
    centroid_decomposition,
    root_and_index,
    walk_boughs,
)


@dataclass(frozen=True)
class CutCandidate:
    """A 1- or 2-tree-edge cut: value, defining edges (lower endpoints), kind."""

    value: int
    edges: tuple[int, ...]
    kind: str

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.value, self.edges)


def _better(a: CutCandidate | None, b: CutCandidate | None) -> CutCandidate | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if a.sort_key <= b.sort_key else b


def _pair_candidate(o: CutOracle, value: int, e: int, f: int, kind: str) -> CutCandidate:
    lo, hi = (e, f) if e < f else (f, e)
    return CutCandidate(value, (lo, hi), kind)


# ---------------------------------------------------------------------------
# Monge rectangle search.


def _monge_rect_min(
    rows: Sequence[int],
    cols: Sequence[int],
    o: CutOracle,
    kind: str,
) -> CutCandidate | None:
    """Exact minimum of the cut matrix rows x cols.

    Assumes the matrix satisfies M[i,j] - M[i,j+1] >= M[i+1,j] - M[i+1,j+1]
    (rows and cols each along one descending tree path, root-side first),
    so the leftmost row argmin is non-increasing in the row index. Uses the
    row-midpoint divide and conquer, O((|rows|+|cols|) log |rows|) queries.
    """
    if not rows or not cols:
        return None
    best: CutCandidate | None = None

    def rec(r1: int, r2: int, c1: int, c2: int, depth: int) -> None:
        nonlocal best
        if r1 > r2 or c1 > c2:
            return
        o.stats.max_depth = max(o.stats.max_depth, depth)
        mid = (r1 + r2) // 2
        e = rows[mid]
        jm = c1
        jm_val: int | None = None
        for j in range(c1, c2 + 1):
            val = cut_query(o, e, cols[j])
            cand = _pair_candidate(o, val, e, cols[j], kind)
            best = _better(best, cand)
            if jm_val is None or val < jm_val:
                jm_val, jm = val, j
        rec(r1, mid - 1, jm, c2, depth + 1)
        rec(mid + 1, r2, c1, jm, depth + 1)

    rec(0, len(rows) - 1, 0, len(cols) - 1, 1)
    return best


def single_path_min(path: Sequence[int], o: CutOracle) -> CutCandidate | None:
    """Minimum cut over all edge pairs of one descending path.

    The pair matrix is partial Monge; halving the path makes every top-half
    x bottom-half block a fully Monge rectangle, giving an exact minimum in
    O(len(path) log^2 len(path)) cut queries. Returns None for paths shorter
    than 2 edges.
    """
    path = list(path)
    if len(path) < 2:
        return None
    best: CutCandidate | None = None

    def rec(lo: int, hi: int) -> None:
        nonlocal best
        if hi - lo + 1 < 2:
            return
        mid = (lo + hi) // 2
        best = _better(
            best,
            _monge_rect_min(path[lo : mid + 1], path[mid + 1 : hi + 1], o, "same-path"),
        )
        rec(lo, mid)
        rec(mid + 1, hi)

    rec(0, len(path) - 1)
    return best


# ---------------------------------------------------------------------------
# Interest search (centroid descent).


def _x_cross(o: CutOracle, u_e: int, v: int, base: int) -> int:
    """Weight of edges from T_e into T_v - T_e (0 when T_v lies inside T_e)."""
    idx = o.idx
    if v == o.tree.root:
        return base
    if idx.in_subtree(u_e, v):
        return 0
    if idx.in_subtree(v, u_e):
        return base - down_cost(o, v, u_e)
    return cross_cost(o, u_e, v)


def _x_down(o: CutOracle, u_e: int, v: int, base: int) -> int:
    """Weight of edges from T_v intersected with T_e to the outside of T_e."""
    idx = o.idx
    if v == o.tree.root or idx.in_subtree(v, u_e):
        return base
    if idx.in_subtree(u_e, v):
        return down_cost(o, u_e, v)
    return 0


def _q_bottom(
    o: CutOracle,
    ct: CentroidTree,
    u_e: int,
    evaluate: Callable[[CutOracle, int, int, int], int],
) -> int | None:
    """Deepest vertex v with 2 * evaluate(v) > w(T_e).

    The true vertices form a single root-down path, so a centroid descent
    locates its bottom with O(1) predicate checks per level. Returns None
    when w(T_e) = 0 (no interest of any kind).
    """
    base = o.cost_table[u_e]
    if base == 0:
        return None
    tree = o.tree
    node_id = 0
    depth = 1
    while True:
        o.stats.max_depth = max(o.stats.max_depth, depth)
        node = ct.nodes[node_id]
        c = node.centroid
        if 2 * evaluate(o, u_e, c, base) > base:
            nxt = None
            for ch in tree.children[c]:
                if 2 * evaluate(o, u_e, ch, base) > base:
                    nxt = ch
                    break
            if nxt is None:
                return c
            follow = ct.child_containing(node_id, nxt)
        else:
            parent = tree.parent[c]
            if parent is None:
                # unreachable: the root always satisfies the predicate
                raise AssertionError("interest descent rejected the tree root")
            follow = ct.child_containing(node_id, parent)
        if follow is None:
            raise AssertionError("interest descent left its centroid component")
        node_id = follow
        depth += 1


@dataclass(frozen=True)
class InterestEndpoints:
    """Per-edge interest terminals, in original-tree vertices.

    cross[e] is the deepest vertex whose parent edge e is cross-interested
    in (None if no such edge); down[e] likewise inside e's subtree; up_top[e]
    is the shallowest endpoint of the ancestor segment e is up-interested in.
    """

    cross: dict[int, int | None]
    down: dict[int, int | None]
    up_top: dict[int, int | None]


def _interest_search(
    e: int, ct: CentroidTree, o: CutOracle, prov: Sequence[int] | None
) -> tuple[int | None, int | None, int | None]:
    """(c_e, d_e, raw cross bottom) for edge e, mapped through provenance."""

    def to_orig(x: int | None) -> int | None:
        if x is None:
            return None
        return x if prov is None else prov[x]

    idx = o.idx
    z = to_orig(_q_bottom(o, ct, e, _x_cross))
    c_e = z if (z is not None and not idx.in_subtree(z, e)) else None
    zd = to_orig(_q_bottom(o, ct, e, _x_down))
    d_e = zd if (zd is not None and zd != e and idx.in_subtree(e, zd)) else None
    return c_e, d_e, z


def interest_endpoints(
    e: int, ct: CentroidTree, o: CutOracle, prov: Sequence[int] | None = None
) -> tuple[int | None, int | None]:
    """Terminal vertices (c_e, d_e) of e's cross- and down-interest paths.

    ``prov`` maps binarization nodes back to original vertices when the
    oracle's tree is binarized.
    """
    c_e, d_e, _ = _interest_search(e, ct, o, prov)
    return c_e, d_e


def build_interest_endpoints(
    edges: Iterable[int],
    ct: CentroidTree,
    o: CutOracle,
    prov: Sequence[int] | None,
    orig_tree: RootedTree,
    anc: AncestorTable,
) -> InterestEndpoints:
    """Run the interest search for every edge and derive up-interest tops."""
    cross: dict[int, int | None] = {}
    down: dict[int, int | None] = {}
    up: dict[int, int | None] = {}
    depth = orig_tree.depth
    for e in edges:
        c_e, d_e, z = _interest_search(e, ct, o, prov)
        cross[e] = c_e
        down[e] = d_e
        up[e] = None
        if z is not None and depth[e] >= 2:
            a = anc.lca(z, e)
            if depth[a] + 1 <= depth[e] - 1:
                up[e] = anc.ancestor_at_depth(e, depth[a] + 1)
    return InterestEndpoints(cross, down, up)


# ---------------------------------------------------------------------------
# Tuples, groups, pair search.


def interest_tuples(
    pp: PathPartition, idx: PostorderIndex, endpoints: InterestEndpoints
) -> list[tuple[int, int, int]]:
    """(home path, partner path, edge) triples from the three interest walks.

    Cross tuples take every path on the root-to-c_e walk; down tuples stop
    once a path's head edge is no longer strictly below e; up tuples stop
    once the walk's entry edge climbs above up_top[e]. Self pairs are left
    to the single-path search.
    """
    tree = pp.tree
    out: set[tuple[int, int, int]] = set()
    for e, c_e in endpoints.cross.items():
        p = pp.bough_of[e]
        if c_e is not None:
            for q, _entry in walk_boughs(pp, c_e):
                if q != p:
                    out.add((p, q, e))
        d_e = endpoints.down.get(e)
        if d_e is not None:
            for q, _entry in walk_boughs(pp, d_e):
                head = pp.paths[q][0]
                if head == e or not idx.in_subtree(e, head):
                    break
                if q != p:
                    out.add((p, q, e))
        top = endpoints.up_top.get(e)
        if top is not None:
            parent = tree.parent[e]
            if parent is not None:
                for q, entry in walk_boughs(pp, parent):
                    if tree.depth[entry] < tree.depth[top]:
                        break
                    if q != p:
                        out.add((p, q, e))
    return sorted(out)


@dataclass(frozen=True)
class PairGroup:
    """A mutually interested path pair with its participating edge lists."""

    p: int
    r: tuple[int, ...]
    q: int
    s: tuple[int, ...]


def group_pairs(
    tuples: Iterable[tuple[int, int, int]],
    depth_of: Callable[[int], int] | None = None,
) -> list[PairGroup]:
    """Merge tuple orientations; keep only mutually interested pairs.

    Edge lists are sorted root-side first (by depth, then id).
    """
    buckets: dict[tuple[int, int], tuple[set[int], set[int]]] = {}
    for p, q, e in tuples:
        if p == q:
            continue
        key = (p, q) if p < q else (q, p)
        r, s = buckets.setdefault(key, (set(), set()))
        (r if p == key[0] else s).add(e)
    key_fn = depth_of if depth_of is not None else (lambda v: v)
    groups = []
    for (a, b), (r, s) in sorted(buckets.items()):
        if r and s:
            order = lambda edge: (key_fn(edge), edge)
            groups.append(
                PairGroup(a, tuple(sorted(r, key=order)), b, tuple(sorted(s, key=order)))
            )
    return groups


def pair_min(group: PairGroup, o: CutOracle) -> CutCandidate | None:
    """Exact minimum cut over the group's r x s matrix.

    The full matrix mixes ancestry cases at class boundaries and is not
    Monge there, so rows are split by their relation to the s-side container
    (ancestor-of-all / disjoint / inside) and inside rows split the columns
    at the deepest ancestor. Each resulting block is geometrically uniform,
    hence Monge, and searched exactly.
    """
    idx = o.idx
    s0 = group.s[0]
    rows_above: list[int] = []
    rows_beside: list[int] = []
    rows_inside: list[int] = []
    for e in group.r:
        if idx.in_subtree(e, s0):
            rows_above.append(e)
        elif idx.in_subtree(s0, e):
            rows_inside.append(e)
        else:
            rows_beside.append(e)
    best: CutCandidate | None = None
    if rows_above:
        best = _better(best, _monge_rect_min(rows_above, group.s, o, "cross-path"))
    if rows_beside:
        best = _better(best, _monge_rect_min(rows_beside, group.s, o, "cross-path"))
    if rows_inside:
        x = rows_inside[0]
        split = 0
        for f in group.s:
            if idx.in_subtree(f, x):
                split += 1
            else:
                break
        if split:
            best = _better(
                best, _monge_rect_min(rows_inside, group.s[:split], o, "cross-path")
            )
        if split < len(group.s):
            best = _better(
                best, _monge_rect_min(rows_inside, group.s[split:], o, "cross-path")
            )
    return best


# ---------------------------------------------------------------------------
# Whole-tree search.


def min_2_respecting(
    g: WeightedGraph,
    tree: RootedTree,
    epsilon: float = 0.125,
    stats_out: OracleStats | None = None,
) -> CutCandidate | None:
    """Minimum cut of g crossing at most 2 edges of the given spanning tree.

    Considers every single tree edge, every same-bough pair, and every
    mutually interested cross-bough pair; binarization nodes guide the
    centroid search but never become cut candidates. Ties break toward
    smaller edge ids.
    """
    if tree.n != g.n:
        raise ValueError("tree must span exactly the graph's vertices")
    if g.n < 2:
        return None
    bin_tree, _, prov = binarize(tree)
    oracle = build_cut_oracle(g, bin_tree, epsilon)
    real_edges = tree.edge_vertices()

    best: CutCandidate | None = None
    for v in real_edges:
        best = _better(
            best, CutCandidate(one_respecting_cost(oracle, v), (v,), "single-edge")
        )

    pp = bough_decomposition(tree)
    for path in pp.paths:
        if len(path) >= 2:
            best = _better(best, single_path_min(path, oracle))

    ct = centroid_decomposition(bin_tree)
    anc = AncestorTable(tree)
    endpoints = build_interest_endpoints(real_edges, ct, oracle, prov, tree, anc)
    idx_orig = root_and_index(tree)
    tuples = interest_tuples(pp, idx_orig, endpoints)
    for grp in group_pairs(tuples, depth_of=tree.depth.__getitem__):
        best = _better(best, pair_min(grp, oracle))

    if stats_out is not None:
        stats_out.cut_queries += oracle.stats.cut_queries
        stats_out.max_depth = max(stats_out.max_depth, oracle.stats.max_depth)
    return best

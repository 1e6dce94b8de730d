"""Ground-truth oracles, Monge audits, graph families, and the bench harness.

Everything the acceptance suite compares against lives here: exhaustive
bipartition search (n <= 20), a deterministic Stoer-Wagner reference, the
definitional cut(e, f) evaluator, and the quadrangle-inequality audit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph_core import (
    SeededRng,
    WeightedGraph,
    connected_components,
    cut_value,
    normalize_partition,
    total_weight,
)
from .tree_decomp import RootedTree

BRUTE_FORCE_LIMIT = 20

CSV_HEADER = "family,n,m,seed,mode,value,ms,cut_queries,forests,depth"


@dataclass(frozen=True)
class OracleResult:
    """Cut value plus one realizing side (canonical smaller partition)."""

    value: int
    partition: frozenset[int]


def brute_force_mincut(g: WeightedGraph) -> OracleResult:
    """Exhaustive minimum over all 2^(n-1) - 1 bipartitions (n <= 20)."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force capped at n = {BRUTE_FORCE_LIMIT}")
    if g.n < 2:
        raise ValueError("need at least 2 vertices to cut")
    masks = np.arange(1, 1 << (g.n - 1), dtype=np.int64)
    values = np.zeros(masks.shape, dtype=np.int64)
    for u, v, w in g.edges:
        bu = (masks >> (u - 1)) & 1 if u > 0 else np.zeros_like(masks)
        bv = (masks >> (v - 1)) & 1 if v > 0 else np.zeros_like(masks)
        values += w * (bu ^ bv)
    best = int(np.argmin(values))
    mask = int(masks[best])
    side = frozenset(v for v in range(1, g.n) if (mask >> (v - 1)) & 1)
    return OracleResult(int(values[best]), normalize_partition(side, g.n))


def stoer_wagner(g: WeightedGraph) -> OracleResult:
    """Deterministic global min-cut by maximum-adjacency orderings.

    Handles parallel edges (summed) and disconnected inputs (value 0 with a
    component as the partition). Ties pick the first candidate in vertex
    order, so results are reproducible.
    """
    if g.n < 2:
        raise ValueError("need at least 2 vertices to cut")
    comps = connected_components(g)
    if len(comps) > 1:
        return OracleResult(0, normalize_partition(comps[0], g.n))
    n = g.n
    weight = np.zeros((n, n), dtype=np.int64)
    for u, v, w in g.edges:
        weight[u, v] += w
        weight[v, u] += w
    merged: list[list[int]] = [[v] for v in range(n)]
    active = list(range(n))
    best_value: int | None = None
    best_side: frozenset[int] | None = None
    while len(active) > 1:
        idxs = np.array(active)
        in_a = np.zeros(len(active), dtype=bool)
        in_a[0] = True
        conn = weight[active[0], idxs].copy()
        prev = active[0]
        last = active[0]
        last_conn = 0
        for _ in range(len(active) - 1):
            j = int(np.argmax(np.where(in_a, np.int64(-1), conn)))
            prev, last = last, active[j]
            last_conn = int(conn[j])
            in_a[j] = True
            conn += weight[last, idxs]
        if best_value is None or last_conn < best_value:
            best_value = last_conn
            best_side = frozenset(merged[last])
        # merge last into prev
        weight[prev, :] += weight[last, :]
        weight[:, prev] += weight[:, last]
        weight[prev, prev] = 0
        weight[last, :] = 0
        weight[:, last] = 0
        merged[prev].extend(merged[last])
        active.remove(last)
    assert best_value is not None and best_side is not None
    return OracleResult(int(best_value), normalize_partition(best_side, g.n))


# ---------------------------------------------------------------------------
# Definitional cut queries and the exhaustive 2-respecting scan.


def _tree_path_edges(tree: RootedTree, u: int, v: int) -> set[int]:
    """Lower endpoints of the edges on the tree path between u and v."""
    ua, va = u, v
    left: list[int] = []
    right: list[int] = []
    du, dv = tree.depth[ua], tree.depth[va]
    while du > dv:
        left.append(ua)
        ua = tree.parent[ua]  # type: ignore[assignment]
        du -= 1
    while dv > du:
        right.append(va)
        va = tree.parent[va]  # type: ignore[assignment]
        dv -= 1
    while ua != va:
        left.append(ua)
        right.append(va)
        ua = tree.parent[ua]  # type: ignore[assignment]
        va = tree.parent[va]  # type: ignore[assignment]
    return set(left) | set(right)


def brute_force_cut_query(g: WeightedGraph, tree: RootedTree, e: int, f: int) -> int:
    """Sum of weights of edges whose tree path contains exactly one of e, f."""
    total = 0
    for u, v, w in g.edges:
        path = _tree_path_edges(tree, u, v)
        if (e in path) != (f in path):
            total += w
    return total


def brute_force_one_respecting(g: WeightedGraph, tree: RootedTree, e: int) -> int:
    """Weight of edges whose tree path contains e (the single-edge cut)."""
    total = 0
    for u, v, w in g.edges:
        if e in _tree_path_edges(tree, u, v):
            total += w
    return total


def brute_two_respect(g: WeightedGraph, tree: RootedTree) -> int:
    """Exhaustive minimum over all 1- and 2-subsets of tree edges."""
    edges = tree.edge_vertices()
    best: int | None = None
    for e in edges:
        val = brute_force_one_respecting(g, tree, e)
        best = val if best is None else min(best, val)
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            val = brute_force_cut_query(g, tree, e, f)
            best = val if best is None else min(best, val)
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# Monge audit.


def monge_audit(
    accessor: Callable[[int, int], int],
    nrows: int,
    ncols: int,
    mode: str = "full",
    samples: int | None = None,
    rng: SeededRng | None = None,
) -> list[tuple[int, int, int]]:
    """Violations of M[i,j] - M[i,j+1] >= M[i+1,j] - M[i+1,j+1].

    mode "partial" audits only quadruples whose four cells all have i != j
    (the off-diagonal domain of a single-path matrix). Returns (i, j, delta)
    per violated quadruple; an empty list certifies the samples.
    """
    if mode not in ("full", "partial"):
        raise ValueError(f"unknown mode {mode!r}")
    quads = [
        (i, j)
        for i in range(nrows - 1)
        for j in range(ncols - 1)
        if mode == "full" or len({i, i + 1} & {j, j + 1}) == 0
    ]
    if samples is not None and rng is not None and len(quads) > samples:
        picked = []
        pool = list(quads)
        for _ in range(samples):
            picked.append(pool.pop(rng.randrange(len(pool))))
        quads = picked
    violations = []
    for i, j in quads:
        delta = (
            accessor(i, j)
            - accessor(i, j + 1)
            - accessor(i + 1, j)
            + accessor(i + 1, j + 1)
        )
        if delta < 0:
            violations.append((i, j, delta))
    return violations


# ---------------------------------------------------------------------------
# Graph families.


def random_connected_graph(
    n: int, m: int, wmax: int, rng: SeededRng
) -> WeightedGraph:
    """Random spanning tree plus random extra edges, weights in [1, wmax]."""
    edges: list[tuple[int, int, int]] = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v, rng.randint(1, wmax)))
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.append((min(u, v), max(u, v), rng.randint(1, wmax)))
    return WeightedGraph(n, tuple(edges))


def cycle_with_chords(n: int, chords: int, wmax: int, rng: SeededRng) -> WeightedGraph:
    edges = [(v, (v + 1) % n, rng.randint(1, wmax)) for v in range(n)]
    for _ in range(chords):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.append((min(u, v), max(u, v), rng.randint(1, wmax)))
    return WeightedGraph(n, tuple(edges))


def two_clique_bridge(half: int, wmax: int, rng: SeededRng) -> WeightedGraph:
    """Two cliques of ``half`` vertices joined by a single unit bridge."""
    edges = []
    for base in (0, half):
        for i in range(half):
            for j in range(i + 1, half):
                edges.append((base + i, base + j, rng.randint(1, wmax)))
    edges.append((half - 1, half, 1))
    return WeightedGraph(2 * half, tuple(edges))


def grid_graph(rows: int, cols: int, wmax: int, rng: SeededRng) -> WeightedGraph:
    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1), rng.randint(1, wmax)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c), rng.randint(1, wmax)))
    return WeightedGraph(rows * cols, tuple(edges))


def multigraph_cycle(n: int, edge_weight: int) -> WeightedGraph:
    """Cycle whose every edge carries ``edge_weight`` unit copies (min-cut 2w)."""
    return WeightedGraph(n, tuple((v, (v + 1) % n, edge_weight) for v in range(n)))


def bridged_multigraph(
    half: int = 32, intra_weight: int = 2000, cross_edges: int = 4, cross_weight: int = 500
) -> WeightedGraph:
    """Two heavy cycles joined by light cross edges; one dominant min-cut.

    With the defaults: 64 vertices, min-cut 4 * 500 = 2000 realized only by
    the cycle-vs-cycle bipartition (any cut through a cycle costs at least
    2 * intra_weight = 4000 more).
    """
    edges = []
    for base in (0, half):
        for i in range(half):
            edges.append((base + i, base + (i + 1) % half, intra_weight))
    for j in range(cross_edges):
        edges.append((j, half + j, cross_weight))
    return WeightedGraph(2 * half, tuple(edges))


def make_family(family: str, n: int, m: int, seed: int) -> WeightedGraph:
    rng = SeededRng(seed).stream("family")
    if family == "gnm":
        return random_connected_graph(n, m, 10, rng)
    if family == "cycle_chords":
        return cycle_with_chords(n, max(0, m - n), 10, rng)
    if family == "two_clique":
        return two_clique_bridge(max(2, n // 2), 10, rng)
    if family == "grid":
        side = max(2, int(n**0.5))
        return grid_graph(side, side, 10, rng)
    if family == "multi_cycle":
        return multigraph_cycle(n, max(1, m))
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Bench harness.


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    m: int
    seed: int
    mode: str
    value: int
    ms: float
    cut_queries: int
    forests: int
    depth: int

    def to_csv_row(self) -> str:
        return (
            f"{self.family},{self.n},{self.m},{self.seed},{self.mode},"
            f"{self.value},{self.ms:.3f},{self.cut_queries},{self.forests},{self.depth}"
        )

    @classmethod
    def from_csv_row(cls, row: str) -> "BenchRecord":
        f, n, m, seed, mode, value, ms, cq, fo, de = row.split(",")
        return cls(f, int(n), int(m), int(seed), mode, int(value), float(ms), int(cq), int(fo), int(de))


def bench_run(cells: Iterable[tuple[str, int, int, int, str]]) -> list[str]:
    """Run (family, n, m, seed, mode) cells; return CSV lines, header first."""
    from .approx_hierarchy import HierarchyConstants, approximate_mincut
    from .driver import RunConfig, exact_mincut

    lines = [CSV_HEADER]
    for family, n, m, seed, mode in cells:
        g = make_family(family, n, m, seed)
        t0 = time.perf_counter()
        stats = {"cut_queries": 0, "forests": 0, "depth": 0}
        if mode == "exact":
            res = exact_mincut(g, RunConfig(seed=seed))
            value = res.value
            stats = res.stats
        elif mode == "oracle":
            value = (
                brute_force_mincut(g).value
                if g.n <= BRUTE_FORCE_LIMIT
                else stoer_wagner(g).value
            )
        elif mode == "approx":
            constants = HierarchyConstants.for_graph(g.n, scale=0.05)
            value, _ = approximate_mincut(g, constants, SeededRng(seed).stream("approx"))
        else:
            raise ValueError(f"unknown mode {mode!r}")
        ms = (time.perf_counter() - t0) * 1000.0
        lines.append(
            BenchRecord(
                family,
                g.n,
                g.m,
                seed,
                mode,
                value,
                ms,
                stats.get("cut_queries", 0),
                stats.get("forests", 0),
                stats.get("depth", 0),
            ).to_csv_row()
        )
    return lines

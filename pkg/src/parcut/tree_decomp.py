"""Rooted-tree machinery: postorder indexing, bough decomposition, Root-paths
queries, binarization, ancestor tables, and centroid decomposition.

Subtrees map to contiguous postorder ranges, which is what lets the cut
oracle answer subtree-weight questions with rectangle queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

INF_WEIGHT = 2**63 - 1  # sentinel weight of binarization-internal edges


@dataclass(frozen=True)
class RootedTree:
    """Immutable rooted tree; children lists are sorted ascending."""

    root: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    def edge_vertices(self) -> list[int]:
        """Lower endpoints of all tree edges (every vertex except the root)."""
        return [v for v in range(self.n) if v != self.root]


def root_tree(n: int, edges: Iterable[tuple[int, int]], root: int = 0) -> RootedTree:
    """Root an undirected tree given as (u, v) pairs.

    Raises ValueError unless the edges form a spanning tree of 0..n-1.
    """
    pairs = list(edges)
    if len(pairs) != n - 1:
        raise ValueError(f"a spanning tree of {n} vertices needs {n - 1} edges")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    parent: list[int | None] = [None] * n
    depth = [0] * n
    children: list[list[int]] = [[] for _ in range(n)]
    seen = [False] * n
    seen[root] = True
    stack = [root]
    while stack:
        x = stack.pop()
        for y in sorted(adj[x]):
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                depth[y] = depth[x] + 1
                children[x].append(y)
                stack.append(y)
    if not all(seen):
        raise ValueError("edges do not span all vertices")
    return RootedTree(
        root,
        tuple(parent),
        tuple(tuple(c) for c in children),
        tuple(depth),
    )


@dataclass(frozen=True)
class PostorderIndex:
    """post/size/start arrays mapping each subtree to a contiguous range.

    ``order[post[u]] == u``; the subtree of ``u`` is exactly
    ``order[start[u] .. post[u]]``.
    """

    post: tuple[int, ...]
    size: tuple[int, ...]
    start: tuple[int, ...]
    order: tuple[int, ...]

    def in_subtree(self, u: int, v: int) -> bool:
        """True iff v lies in u's subtree (inclusive)."""
        return self.start[u] <= self.post[v] <= self.post[u]


def root_and_index(t: RootedTree) -> PostorderIndex:
    """Postorder numbering with children visited in ascending vertex order."""
    n = t.n
    post = [0] * n
    size = [1] * n
    order = [0] * n
    counter = 0
    # Iterative postorder: (vertex, next-child cursor).
    stack: list[tuple[int, int]] = [(t.root, 0)]
    while stack:
        v, i = stack[-1]
        kids = t.children[v]
        if i < len(kids):
            stack[-1] = (v, i + 1)
            stack.append((kids[i], 0))
        else:
            stack.pop()
            for c in kids:
                size[v] += size[c]
            post[v] = counter
            order[counter] = v
            counter += 1
    start = [post[v] - size[v] + 1 for v in range(n)]
    return PostorderIndex(tuple(post), tuple(size), tuple(start), tuple(order))


# ---------------------------------------------------------------------------
# Bough decomposition and Root-paths.


@dataclass(frozen=True)
class PathPartition:
    """Edge-disjoint descending paths covering the tree.

    Each path is a list of edge lower endpoints ordered root-side first;
    ``bough_of[v]`` is the path id of the edge (v, parent(v)).
    """

    tree: RootedTree
    paths: tuple[tuple[int, ...], ...]
    bough_of: tuple[int, ...]

    def head_edge(self, path_id: int) -> int:
        """Lower endpoint of the root-closest edge of a path."""
        return self.paths[path_id][0]


def bough_decomposition(t: RootedTree) -> PathPartition:
    """Peel maximal leaf-ending chains round by round.

    Every tree edge lands in exactly one path, and any root-to-leaf path
    meets O(log n) of them (leaves at least halve per round).
    """
    n = t.n
    removed = [False] * n  # indexed by edge lower endpoint
    alive_children = [len(t.children[v]) for v in range(n)]
    paths: list[tuple[int, ...]] = []
    bough_of = [-1] * n
    remaining = n - 1
    while remaining > 0:
        leaves = [
            v
            for v in range(n)
            if v != t.root and not removed[v] and alive_children[v] == 0
        ]
        round_counts = alive_children[:]  # chain test uses round-start counts
        for leaf in leaves:
            if removed[leaf]:
                continue
            chain = [leaf]
            v = leaf
            while True:
                p = t.parent[v]
                if p is None or p == t.root or round_counts[p] != 1:
                    break
                chain.append(p)
                v = p
            path_id = len(paths)
            chain.reverse()
            for v in chain:
                removed[v] = True
                bough_of[v] = path_id
                alive_children[t.parent[v]] -= 1
            paths.append(tuple(chain))
            remaining -= len(chain)
    return PathPartition(t, tuple(paths), tuple(bough_of))


def walk_boughs(pp: PathPartition, u: int) -> Iterator[tuple[int, int]]:
    """Yield (path id, entry edge) for every path met walking u -> root.

    The entry edge is the deepest edge of that path on the root-to-u path;
    paths appear bottom-up.
    """
    t = pp.tree
    v = u
    while v != t.root:
        i = pp.bough_of[v]
        yield i, v
        head = pp.paths[i][0]
        v = t.parent[head]  # type: ignore[assignment]


def root_paths(pp: PathPartition, idx: PostorderIndex, u: int) -> list[int]:
    """Path ids intersecting the root-to-u tree path, ordered from u upward."""
    del idx  # the partition tables already answer the query
    return [i for i, _ in walk_boughs(pp, u)]


# ---------------------------------------------------------------------------
# Binarization.


def binarize(
    t: RootedTree, weights: dict[int, int] | None = None
) -> tuple[RootedTree, dict[int, int], tuple[int, ...]]:
    """Rebuild t so every node has at most 2 children.

    A node with children c1..cd (d >= 3) gets a chain of internal nodes
    i1..i(d-1): the node keeps the single child i1, each ij holds (cj, i(j+1))
    and the last holds (c(d-1), cd). Internal edges carry INF_WEIGHT and must
    never become cut candidates; original edges keep their weight.

    Returns (binarized tree, weight map by lower endpoint, provenance map
    sending every new vertex to the original node it was split from).
    """
    n = t.n
    parent: list[int | None] = list(t.parent)
    children: list[list[int]] = [list(c) for c in t.children]
    prov: list[int] = list(range(n))
    weight_map: dict[int, int] = {}
    for v in range(n):
        if v != t.root:
            weight_map[v] = weights.get(v, 0) if weights is not None else 0
    next_id = n
    for v in range(n):
        kids = list(t.children[v])
        if len(kids) <= 2:
            continue
        internals = []
        for _ in range(len(kids) - 1):
            internals.append(next_id)
            parent.append(None)
            children.append([])
            prov.append(v)
            next_id += 1
        children[v] = [internals[0]]
        parent[internals[0]] = v
        weight_map[internals[0]] = INF_WEIGHT
        for j, node in enumerate(internals):
            if j + 1 < len(internals):
                children[node] = [kids[j], internals[j + 1]]
                parent[internals[j + 1]] = node
                weight_map[internals[j + 1]] = INF_WEIGHT
            else:
                children[node] = [kids[j], kids[j + 1]]
            for c in children[node]:
                if c < n:
                    parent[c] = node
    depth = [0] * next_id
    stack = [t.root]
    order_children = [sorted(c) for c in children]
    while stack:
        x = stack.pop()
        for y in order_children[x]:
            depth[y] = depth[x] + 1
            stack.append(y)
    return (
        RootedTree(
            t.root,
            tuple(parent),
            tuple(tuple(sorted(c)) for c in children),
            tuple(depth),
        ),
        weight_map,
        tuple(prov),
    )


# ---------------------------------------------------------------------------
# Ancestor jumps / LCA.


class AncestorTable:
    """Binary-lifting jump pointers: ancestor-at-depth and LCA queries."""

    def __init__(self, t: RootedTree) -> None:
        self.tree = t
        n = t.n
        levels = max(1, (n - 1).bit_length())
        up = [[0] * n]
        for v in range(n):
            p = t.parent[v]
            up[0][v] = v if p is None else p
        for k in range(1, levels):
            prev = up[k - 1]
            up.append([prev[prev[v]] for v in range(n)])
        self.up = up

    def ancestor_at_depth(self, v: int, d: int) -> int:
        """The ancestor of v at depth d (requires d <= depth(v))."""
        delta = self.tree.depth[v] - d
        if delta < 0:
            raise ValueError("requested depth below the vertex")
        k = 0
        while delta:
            if delta & 1:
                v = self.up[k][v]
            delta >>= 1
            k += 1
        return v

    def lca(self, u: int, v: int) -> int:
        depth = self.tree.depth
        if depth[u] > depth[v]:
            u, v = v, u
        v = self.ancestor_at_depth(v, depth[u])
        if u == v:
            return u
        for k in range(len(self.up) - 1, -1, -1):
            if self.up[k][u] != self.up[k][v]:
                u = self.up[k][u]
                v = self.up[k][v]
        return self.up[0][u]


# ---------------------------------------------------------------------------
# Centroid decomposition.


@dataclass(frozen=True)
class CentroidNode:
    centroid: int
    component: frozenset[int]
    children: tuple[int, ...]


@dataclass(frozen=True)
class CentroidTree:
    """Recursive centroid decomposition; node 0 is the top-level centroid."""

    tree: RootedTree
    nodes: tuple[CentroidNode, ...]
    depth: int

    def child_containing(self, node_id: int, v: int) -> int | None:
        for child_id in self.nodes[node_id].children:
            if v in self.nodes[child_id].component:
                return child_id
        return None


def centroid_decomposition(t: RootedTree) -> CentroidTree:
    """Centroid decomposition; ties pick the smallest vertex id.

    Expects a binarized tree (each split then has at most 3 neighbor
    components), but works for any tree.
    """
    adj: list[list[int]] = [[] for _ in range(t.n)]
    for v in range(t.n):
        p = t.parent[v]
        if p is not None:
            adj[v].append(p)
            adj[p].append(v)
    nodes: list[CentroidNode | None] = []
    max_depth = 0

    def build(component: list[int], level: int) -> int:
        nonlocal max_depth
        max_depth = max(max_depth, level)
        comp_set = set(component)
        anchor = component[0]
        # Subtree sizes within the component, rooted at anchor.
        order: list[int] = []
        parent_in: dict[int, int | None] = {anchor: None}
        stack = [anchor]
        while stack:
            x = stack.pop()
            order.append(x)
            for y in adj[x]:
                if y in comp_set and y not in parent_in:
                    parent_in[y] = x
                    stack.append(y)
        size = {x: 1 for x in order}
        for x in reversed(order):
            p = parent_in[x]
            if p is not None:
                size[p] += size[x]
        total = len(order)
        centroid = -1
        for x in sorted(order):
            heaviest = total - size[x]
            for y in adj[x]:
                if y in comp_set and parent_in.get(y) == x:
                    heaviest = max(heaviest, size[y])
            if heaviest <= total // 2:
                centroid = x
                break
        node_id = len(nodes)
        nodes.append(None)  # reserve slot
        child_ids = []
        comp_set.remove(centroid)
        for nb in sorted(adj[centroid]):
            if nb not in comp_set:
                continue
            piece = []
            stack = [nb]
            comp_set.remove(nb)
            while stack:
                x = stack.pop()
                piece.append(x)
                for y in adj[x]:
                    if y in comp_set:
                        comp_set.remove(y)
                        stack.append(y)
            child_ids.append(build(piece, level + 1))
        nodes[node_id] = CentroidNode(
            centroid, frozenset(component), tuple(child_ids)
        )
        return node_id

    build(list(range(t.n)), 1)
    return CentroidTree(t, tuple(n for n in nodes if n is not None), max_depth)

"""Core graph types, the text format, seeded randomness, and elementary routines.

Everything downstream (sparsification, hierarchies, packing, cut search)
works on the immutable :class:`WeightedGraph` defined here. Randomized steps
draw from :class:`SeededRng` child streams keyed by ``(seed, label, index)``,
so results never depend on thread count or iteration order.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable

MAX_EDGE_WEIGHT = 2**62
MAX_TOTAL_WEIGHT = 2**63 - 1

_MASK64 = (1 << 64) - 1


class GraphFormatError(ValueError):
    """Malformed graph text (bad header, bad edge line, wrong edge count)."""


class WeightRangeError(GraphFormatError):
    """Edge weight negative, above 2^62, or total weight above 64 bits."""


class VertexIdError(GraphFormatError):
    """Vertex id outside 0..n-1, or a self-loop."""


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected multigraph with dense 0-based vertex ids and integer weights.

    ``edges`` holds ``(u, v, w)`` triples. Parallel edges are kept separate;
    an edge of weight ``w`` stands for ``w`` unit copies wherever the
    multigraph view matters. Instances are immutable and safe to share
    between threads.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise VertexIdError("vertex count must be non-negative")
        total = 0
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexIdError(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise VertexIdError(f"self-loop at vertex {u}")
            if w < 0 or w > MAX_EDGE_WEIGHT:
                raise WeightRangeError(f"edge weight {w} outside [0, 2^62]")
            total += w
        if total > MAX_TOTAL_WEIGHT:
            raise WeightRangeError("total edge weight exceeds 64 bits")

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[tuple[int, int, int]]]:
        """Per-vertex list of (neighbor, weight, edge id)."""
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v, w) in enumerate(self.edges):
            adj[u].append((v, w, eid))
            adj[v].append((u, w, eid))
        return adj


def make_graph(n: int, edges: Iterable[tuple[int, int, int]]) -> WeightedGraph:
    return WeightedGraph(n, tuple((int(u), int(v), int(w)) for u, v, w in edges))


def total_weight(g: WeightedGraph) -> int:
    """Sum of all edge weights (construction already bounds it to 64 bits)."""
    return sum(w for _, _, w in g.edges)


def ln(x: float) -> float:
    """Natural log, the single base used by every layered-constants formula."""
    return math.log(x)


# ---------------------------------------------------------------------------
# Text format: `p <n> <m>` header, then m lines `e <u> <v> <w>`, `c` comments.


def parse_graph(text: str | bytes) -> WeightedGraph:
    """Parse the line-oriented graph format.

    Raises :class:`GraphFormatError` (with the offending line number) on
    malformed input, :class:`WeightRangeError` / :class:`VertexIdError` on
    out-of-range weights or ids.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    n = -1
    declared_m = -1
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: header must be 'p <n> <m>'")
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header field") from None
        elif parts[0] == "e":
            if n < 0:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(parts) != 4:
                raise GraphFormatError(f"line {lineno}: edge must be 'e <u> <v> <w>'")
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer edge field") from None
            if w < 0 or w > MAX_EDGE_WEIGHT:
                raise WeightRangeError(f"line {lineno}: weight {w} outside [0, 2^62]")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexIdError(f"line {lineno}: vertex id out of range")
            if u == v:
                raise VertexIdError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u, v, w))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record '{parts[0]}'")
    if n < 0:
        raise GraphFormatError("missing 'p <n> <m>' header")
    if declared_m != len(edges):
        raise GraphFormatError(f"header declares {declared_m} edges, found {len(edges)}")
    return WeightedGraph(n, tuple(edges))


def serialize_graph(g: WeightedGraph) -> str:
    """Canonical text form; `parse_graph(serialize_graph(g))` reproduces g."""
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Seeded randomness.


class SeededRng:
    """Deterministic random stream with derived child streams.

    A stream is identified by ``(seed, label, index)``. Identical triples
    always yield identical draws, independent of thread scheduling; parallel
    loops give each unit of work its own ``stream(label, index)``.
    """

    __slots__ = ("seed", "_rand")

    def __init__(self, seed: int) -> None:
        self.seed = int(seed) & _MASK64
        self._rand: random.Random | None = None

    def stream(self, label: str, index: int = 0) -> "SeededRng":
        digest = hashlib.blake2b(
            f"{self.seed}:{label}:{index}".encode("ascii"), digest_size=8
        ).digest()
        return SeededRng(int.from_bytes(digest, "big"))

    def _r(self) -> random.Random:
        if self._rand is None:
            self._rand = random.Random(self.seed)
        return self._rand

    def random(self) -> float:
        return self._r().random()

    def randrange(self, stop: int) -> int:
        return self._r().randrange(stop)

    def randint(self, a: int, b: int) -> int:
        return self._r().randint(a, b)


def _logaddexp(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    if b == -math.inf:
        return a
    return a + math.log1p(math.exp(b - a))


def sample_binomial(rng: SeededRng, trials: int, p: float, cap: int | None = None) -> int:
    """Inverse-transform Binomial(trials, p) sample, truncated at ``cap``.

    The CDF is walked from zero with the pmf accumulated in log-space, so at
    most ``min(trials, cap) + 1`` terms are evaluated and large ``trials``
    cannot underflow. Values that would exceed ``cap`` collapse onto ``cap``
    (this realizes ``min(cap, Binomial(trials, p))``).
    """
    limit = trials if cap is None else min(trials, cap)
    if limit <= 0 or p <= 0.0 or trials <= 0:
        return 0
    if p >= 1.0:
        return limit
    u = rng.random()
    if u <= 0.0:
        return 0
    log_u = math.log(u)
    log_pmf = trials * math.log1p(-p)
    log_cdf = log_pmf
    log_odds = math.log(p) - math.log1p(-p)
    k = 0
    while log_cdf < log_u and k < limit:
        k += 1
        log_pmf += math.log((trials - k + 1) / k) + log_odds
        log_cdf = _logaddexp(log_cdf, log_pmf)
    return k


# ---------------------------------------------------------------------------
# Forests and connectivity.


@dataclass(frozen=True)
class Forest:
    """Rooted spanning forest: per-vertex parent and realizing graph edge id."""

    parent: tuple[int | None, ...]
    edge_of: tuple[int | None, ...]

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(e for e in self.edge_of if e is not None))

    def component_count(self) -> int:
        return sum(1 for p in self.parent if p is None)


class DisjointSets:
    """Union-find with path compression; deterministic union by root id."""

    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def forest_edge_ids(g: WeightedGraph, active: Callable[[int], bool] | None = None) -> list[int]:
    """Edge ids of a spanning forest of the active subgraph.

    Edges are examined in ascending id order, which fixes the forest
    deterministically.
    """
    ds = DisjointSets(g.n)
    chosen: list[int] = []
    for eid, (u, v, _) in enumerate(g.edges):
        if active is not None and not active(eid):
            continue
        if ds.union(u, v):
            chosen.append(eid)
    return chosen


def spanning_forest(g: WeightedGraph, active: Callable[[int], bool] | None = None) -> Forest:
    """Deterministic spanning forest of the subgraph of active edges.

    Each component is rooted at its smallest vertex; per-vertex parents are
    oriented away from that root.
    """
    chosen = forest_edge_ids(g, active)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid in chosen:
        u, v, _ = g.edges[eid]
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    parent: list[int | None] = [None] * g.n
    edge_of: list[int | None] = [None] * g.n
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            x = stack.pop()
            for y, eid in sorted(adj[x]):
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    edge_of[y] = eid
                    stack.append(y)
    return Forest(tuple(parent), tuple(edge_of))


def connected_components(g: WeightedGraph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted ascending."""
    ds = DisjointSets(g.n)
    for u, v, _ in g.edges:
        ds.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(ds.find(v), []).append(v)
    return [groups[r] for r in sorted(groups)]


def is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def cut_value(g: WeightedGraph, side: Iterable[int]) -> int:
    """Total weight of edges with exactly one endpoint in ``side``."""
    inside = set(side)
    return sum(w for u, v, w in g.edges if (u in inside) != (v in inside))


def normalize_partition(side: Iterable[int], n: int) -> frozenset[int]:
    """Canonical side of a bipartition: the smaller one; ties keep vertex 0."""
    s = frozenset(side)
    comp = frozenset(range(n)) - s
    if len(s) > len(comp):
        return comp
    if len(s) == len(comp):
        return s if 0 in s else comp
    return s

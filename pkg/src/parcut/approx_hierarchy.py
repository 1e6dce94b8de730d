"""Layered min-cut estimation: truncated/exclusive hierarchy, per-layer
certificates, and the layer scan that reads off the estimate.

Layer i subsamples the multigraph at probability 2^-i. Each edge enters at
its critical layer with a direct binomial draw and halves by independent
coin flips per layer after that; layers store the copies that die there
(the exclusive view), and the truncated view of layer i is the union of
exclusive layers >= i. Certificates bound the work of the per-layer min-cut
computations; the estimate is 2^s * c_s at the first layer s whose certified
min-cut falls under the skeleton band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph_core import (
    DisjointSets,
    SeededRng,
    WeightedGraph,
    is_connected,
    ln,
    sample_binomial,
    total_weight,
)

C_SKELETON = 100.0
C_CRITICAL = 500.0
C_COUNT = 400.0
C_SF = 200.0


@dataclass(frozen=True)
class HierarchyConstants:
    """The four layer constants, a global scale knob, and cached ln(n)."""

    logn: float
    scale: float = 1.0
    c_skeleton: float = C_SKELETON
    c_crit: float = C_CRITICAL
    c_count: float = C_COUNT
    c_sf: float = C_SF

    def __post_init__(self) -> None:
        if not (self.c_crit >= self.c_count >= 2 * self.c_sf > 0):
            raise ValueError("need c_crit >= c_count >= 2*c_sf > 0")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @classmethod
    def for_graph(cls, n: int, scale: float = 1.0, **overrides: float) -> "HierarchyConstants":
        return cls(logn=ln(max(n, 2)), scale=scale, **overrides)

    @property
    def critical_threshold(self) -> float:
        return self.c_crit * self.scale * self.logn

    @property
    def count_budget(self) -> int:
        return max(1, math.ceil(self.c_count * self.scale * self.logn))

    @property
    def sf_budget(self) -> int:
        return max(1, math.ceil(self.c_sf * self.scale * self.logn))

    @property
    def layer_bound(self) -> float:
        """Scan stop bound: (125/100) * c_skeleton * scale * ln n."""
        return 1.25 * self.c_skeleton * self.scale * self.logn


def critical_layer(w: int, constants: HierarchyConstants) -> int:
    """Largest t >= 0 with w / 2^t >= c_crit * scale * ln n (0 if none)."""
    if w <= 0:
        return 0
    threshold = max(constants.critical_threshold, 1.0)
    t = 0
    while w / (1 << (t + 1)) >= threshold:
        t += 1
    return t


@dataclass(frozen=True)
class Hierarchy:
    """Exclusive layers plus the accessor reconstructing truncated layers.

    ``layers[i]`` maps edge id -> copies whose last layer is i. An edge's
    copies live only at layers >= its critical layer; the truncated view at
    its critical layer equals its binomial entry sample.
    """

    graph: WeightedGraph
    k: int
    layers: tuple[dict[int, int], ...]

    def trunc_view(self, i: int) -> dict[int, int]:
        """Edge multiplicities of the truncated layer i (union of layers >= i)."""
        out: dict[int, int] = {}
        for layer in self.layers[i:]:
            for eid, c in layer.items():
                out[eid] = out.get(eid, 0) + c
        return out


def build_truncated_exclusive_hierarchy(
    g: WeightedGraph, constants: HierarchyConstants, rng: SeededRng
) -> Hierarchy:
    """Sample every edge's layer occupancy.

    Edge e enters layer t_e with Binomial(w(e), 2^-t_e) copies; each copy
    survives each later layer with probability 1/2. Per-edge streams make
    the result independent of edge processing order.
    """
    w_total = total_weight(g)
    k = max(0, math.ceil(math.log2(w_total))) if w_total >= 1 else 0
    layers: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    for eid, (_, _, w) in enumerate(g.edges):
        if w == 0:
            continue
        stream = rng.stream("hierarchy", eid)
        t = min(critical_layer(w, constants), k)
        count = sample_binomial(stream, w, 2.0**-t, cap=w)
        for i in range(t, k + 1):
            survivors = 0 if i == k else sample_binomial(stream, count, 0.5, cap=count)
            died = count - survivors
            if died > 0:
                layers[i][eid] = died
            count = survivors
            if count == 0:
                break
    return Hierarchy(g, k, tuple(layers))


@dataclass(frozen=True)
class CertificateLayer:
    """Certified subset of one exclusive layer (edge id -> copies kept)."""

    index: int
    multiplicity: dict[int, int]
    graph: WeightedGraph


def _forest_of_support(g: WeightedGraph, support: dict[int, int]) -> list[int]:
    ds = DisjointSets(g.n)
    chosen = []
    for eid in sorted(support):
        u, v, _ = g.edges[eid]
        if ds.union(u, v):
            chosen.append(eid)
    return chosen


def build_certificate_hierarchy(
    h: Hierarchy, constants: HierarchyConstants
) -> list[CertificateLayer]:
    """Forest-peel each exclusive layer top down under shared edge budgets.

    Every weighted edge participates in at most ``count_budget`` forest
    computations across all layers; a layer stops after ``sf_budget`` + 1
    forests or when it is exhausted. Returned in layer order 0..k.
    """
    g = h.graph
    count_e = {eid: constants.count_budget for eid in range(g.m)}
    sf_budget = constants.sf_budget
    out: list[CertificateLayer] = []
    for i in range(h.k, -1, -1):
        remaining = dict(h.layers[i])
        kept: dict[int, int] = {}
        sfcount = 0
        while sfcount <= sf_budget and remaining:
            for eid in [e for e in remaining if count_e[e] == 0]:
                del remaining[eid]
            if not remaining:
                break
            forest = _forest_of_support(g, remaining)
            for eid in remaining:
                count_e[eid] -= 1
            for eid in forest:
                kept[eid] = kept.get(eid, 0) + 1
                remaining[eid] -= 1
                if remaining[eid] == 0:
                    del remaining[eid]
            sfcount += 1
        out.append(CertificateLayer(i, kept, g))
    out.reverse()
    return out


def union_graph(certs: list[CertificateLayer], i: int) -> WeightedGraph:
    """Multigraph union of certificate layers >= i, multiplicities as weights."""
    if not certs:
        raise ValueError("no certificate layers")
    g = certs[0].graph
    acc: dict[int, int] = {}
    for layer in certs:
        if layer.index < i:
            continue
        for eid, c in layer.multiplicity.items():
            acc[eid] = acc.get(eid, 0) + c
    edges = tuple(
        (g.edges[eid][0], g.edges[eid][1], c) for eid, c in sorted(acc.items())
    )
    return WeightedGraph(g.n, edges)


def mincut_of_union(certs: list[CertificateLayer], i: int, mode: str = "oracle") -> int:
    """Min-cut value of the union of certificate layers >= i.

    mode "oracle" runs the deterministic reference; "exact" runs the driver
    pipeline with the union's own certified floor as the min-cut hint.
    Disconnected unions report 0.
    """
    union = union_graph(certs, i)
    if not is_connected(union):
        return 0
    if mode == "oracle":
        from .oracle_bench import stoer_wagner

        return stoer_wagner(union).value
    if mode == "exact":
        from .driver import RunConfig, exact_mincut

        return exact_mincut(union, RunConfig(seed=i)).value
    raise ValueError(f"unknown mode {mode!r}")


def layer_mincuts(
    g: WeightedGraph, constants: HierarchyConstants, rng: SeededRng, mode: str = "oracle"
) -> list[int]:
    """c_i for every layer i (diagnostic; the scan itself stops early)."""
    h = build_truncated_exclusive_hierarchy(g, constants, rng)
    certs = build_certificate_hierarchy(h, constants)
    return [mincut_of_union(certs, i, mode) for i in range(h.k + 1)]


def approximate_mincut(
    g: WeightedGraph,
    constants: HierarchyConstants,
    rng: SeededRng,
    mode: str = "oracle",
) -> tuple[int, int]:
    """(estimate, layer): 2^s * c_s at the first layer under the scan bound.

    Layer min-cuts decrease roughly geometrically, so the first layer whose
    certified min-cut is at most 1.25 * c_skeleton * scale * ln n sits in
    the skeleton band and inverting its sampling rate estimates the min-cut.
    When the min-cut is already below the bound the answer is exact (layer 0
    truncates nothing that such a cut uses). Disconnected input gives (0, 0).
    """
    if not is_connected(g):
        return 0, 0
    h = build_truncated_exclusive_hierarchy(g, constants, rng)
    certs = build_certificate_hierarchy(h, constants)
    bound = constants.layer_bound
    value = 0
    for i in range(h.k + 1):
        value = mincut_of_union(certs, i, mode)
        if value <= bound:
            return (1 << i) * value, i
    return (1 << h.k) * value, h.k

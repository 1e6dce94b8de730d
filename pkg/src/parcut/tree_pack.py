"""Greedy spanning-tree packing on the sparsifier.

Each round takes a minimum spanning tree under the loads accumulated so
far; with enough rounds at least one tree crosses the minimum cut at most
twice, which is what the per-tree 2-respecting search needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph_core import DisjointSets, SeededRng, WeightedGraph, is_connected, ln
from .sparsify import build_sparsifier

DEFAULT_PACK_FACTOR = 3.0  # rounds = ceil(factor * ln n)


@dataclass(frozen=True)
class TreePacking:
    """Spanning trees (edge-id lists into the packed graph) and final loads."""

    trees: tuple[tuple[int, ...], ...]
    loads: tuple[int, ...]


def _mst_by_load(g: WeightedGraph, loads: list[int]) -> list[int]:
    order = sorted(range(g.m), key=lambda eid: (loads[eid], eid))
    ds = DisjointSets(g.n)
    chosen = []
    for eid in order:
        u, v, _ = g.edges[eid]
        if ds.union(u, v):
            chosen.append(eid)
    return chosen


def greedy_tree_packing(h: WeightedGraph, rounds: int) -> TreePacking:
    """Round-robin minimum spanning trees keyed by accumulated load.

    Stops early once the chosen tree consists entirely of edges already
    loaded to their weight (continuing could only recycle saturated edges).
    Raises ValueError on disconnected input.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if not is_connected(h):
        raise ValueError("tree packing needs a connected graph")
    loads = [0] * h.m
    trees: list[tuple[int, ...]] = []
    for _ in range(rounds):
        chosen = _mst_by_load(h, loads)
        if all(loads[eid] >= h.edges[eid][2] for eid in chosen):
            break
        for eid in chosen:
            loads[eid] += 1
        trees.append(tuple(chosen))
    return TreePacking(tuple(trees), tuple(loads))


def pack_for_mincut(
    g: WeightedGraph,
    epsilon: float,
    lambda_est: int,
    rng: SeededRng,
    pack_factor: float = DEFAULT_PACK_FACTOR,
) -> list[list[tuple[int, int]]]:
    """Sparsify, pack, and return each tree as (u, v) endpoint pairs on g.

    The trees are topologies for the 2-respecting step; their weights in the
    sparsifier are irrelevant downstream. If sampling happened to disconnect
    the sparsifier, the packing falls back to the input graph.
    """
    if not is_connected(g):
        raise ValueError("min-cut packing needs a connected graph")
    h = build_sparsifier(g, epsilon, lambda_est, rng)
    if not is_connected(h) or h.n != g.n:
        h = g
    rounds = max(1, math.ceil(pack_factor * ln(max(g.n, 2))))
    packing = greedy_tree_packing(h, rounds)
    return [
        [(h.edges[eid][0], h.edges[eid][1]) for eid in tree] for tree in packing.trees
    ]

"""Skeleton sampling and sparse k-connectivity certificates.

A skeleton keeps each edge with a capped binomial weight; a certificate is
the union of k iterated spanning forests of the multigraph view and keeps
every cut of value <= k exactly. Composed, they form the sparsifier that
the tree-packing stage runs on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph_core import (
    SeededRng,
    WeightedGraph,
    forest_edge_ids,
    ln,
    sample_binomial,
)

# Defaults for the sampling-probability formula p = 3(d+2) ln(n) / (eps^2 g l).
SKELETON_D = 2
SKELETON_GAMMA = 1.0
# The true min-cut is assumed within this factor above the underestimate
# (the driver hands us half of an exact or (1 +/- 1/3)-approximate value).
LAMBDA_OVER_ESTIMATE = 2.0


@dataclass(frozen=True)
class SkeletonParams:
    """Sampling probability, per-edge weight cap (None = uncapped), accuracy."""

    p: float
    cap: int | None
    epsilon: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("sampling probability must lie in [0, 1]")
        if self.cap is not None and self.cap < 0:
            raise ValueError("cap must be non-negative")


def sample_skeleton(g: WeightedGraph, params: SkeletonParams, rng: SeededRng) -> WeightedGraph:
    """Independently resample every edge weight as min(cap, Binomial(w, p)).

    Each edge draws from its own derived stream, so the result is identical
    under any parallel edge order. Zero-weight samples drop the edge.
    """
    kept: list[tuple[int, int, int]] = []
    for eid, (u, v, w) in enumerate(g.edges):
        x = sample_binomial(rng.stream("skeleton", eid), w, params.p, params.cap)
        if x > 0:
            kept.append((u, v, x))
    return WeightedGraph(g.n, tuple(kept))


def k_certificate(g: WeightedGraph, k: int) -> WeightedGraph:
    """Union of k iterated spanning forests of the multigraph view.

    Each round takes one unit copy per chosen edge (forests are found on the
    support of the remaining copies, edge ids ascending). Cuts of value <= k
    keep their exact value; output total weight is at most k(n-1).
    """
    if k < 1:
        raise ValueError("certificate order k must be at least 1")
    residual = [w for _, _, w in g.edges]
    multiplicity = [0] * g.m
    for _ in range(k):
        chosen = forest_edge_ids(g, lambda eid: residual[eid] > 0)
        if not chosen:
            break
        for eid in chosen:
            residual[eid] -= 1
            multiplicity[eid] += 1
    edges = tuple(
        (u, v, multiplicity[eid])
        for eid, (u, v, _) in enumerate(g.edges)
        if multiplicity[eid] > 0
    )
    return WeightedGraph(g.n, edges)


def skeleton_probability(n: int, epsilon: float, lambda_est: int) -> float:
    """min(1, 3(d+2) ln(n) / (eps^2 gamma lambda_est))."""
    if lambda_est <= 0:
        raise ValueError("lambda_est must be positive")
    return min(
        1.0,
        3.0 * (SKELETON_D + 2) * ln(n) / (epsilon**2 * SKELETON_GAMMA * lambda_est),
    )


def build_sparsifier(
    g: WeightedGraph, epsilon: float, lambda_est: int, rng: SeededRng
) -> WeightedGraph:
    """Capped skeleton followed by a k-connectivity certificate.

    lambda_est must be a positive constant-factor underestimate of the
    min-cut. The cap is ceil(2 + 1.5 * (125/75) * p * lambda_est); the
    certificate order is ceil((1+eps) * expected skeleton min-cut) + 1 with
    the expectation taken at LAMBDA_OVER_ESTIMATE * lambda_est.
    """
    if lambda_est <= 0:
        raise ValueError("lambda_est must be positive")
    p = skeleton_probability(g.n, epsilon, lambda_est)
    cap = math.ceil(2 + 1.5 * (125.0 / 75.0) * p * lambda_est)
    skeleton = sample_skeleton(g, SkeletonParams(p, cap, epsilon), rng)
    expected_mincut = p * LAMBDA_OVER_ESTIMATE * lambda_est
    k = math.ceil((1 + epsilon) * expected_mincut) + 1
    return k_certificate(skeleton, k)

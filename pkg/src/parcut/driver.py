"""End-to-end exact min-cut, partition recovery, and the parcut CLI.

The pipeline: get a min-cut underestimate (hint, or the deterministic
reference on a shrunken graph, or the layered estimator when asked), build
the sparsifier, pack trees greedily, run the 2-respecting search per tree,
and return the best candidate with its recovered vertex partition.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .approx_hierarchy import HierarchyConstants, approximate_mincut
from .graph_core import (
    GraphFormatError,
    SeededRng,
    WeightedGraph,
    connected_components,
    cut_value,
    normalize_partition,
    parse_graph,
    total_weight,
)
from .range_query import OracleStats
from .sparsify import k_certificate
from .tree_decomp import RootedTree, root_and_index, root_tree
from .tree_pack import pack_for_mincut
from .two_respect import CutCandidate, min_2_respecting


@dataclass(frozen=True)
class RunConfig:
    """Pipeline knobs; defaults match the documented CLI defaults."""

    mode: str = "exact"
    epsilon_pack: float = 1.0 / 3.0
    epsilon_rq: float = 0.125
    scale: float = 1.0
    seed: int = 0
    threads: int = 1
    lambda_hint: int | None = None
    pack_factor: float = 3.0
    repeat_seeds: int = 1
    lambda_source: str = "reference"  # "reference" (deterministic) or "approx"

    def __post_init__(self) -> None:
        if not (0.0 < self.epsilon_pack <= 1.0):
            raise ValueError("epsilon_pack must lie in (0, 1]")
        if not (0.0 < self.epsilon_rq <= 1.0):
            raise ValueError("epsilon_rq must lie in (0, 1]")
        if self.threads < 1 or self.repeat_seeds < 1:
            raise ValueError("threads and repeat_seeds must be positive")


@dataclass(frozen=True)
class CutResult:
    """Cut value, canonical smaller side, witness (tree index, candidate)."""

    value: int
    partition: frozenset[int]
    witness: tuple[int, CutCandidate] | None
    seed: int
    stats: dict[str, int] = field(default_factory=dict)


def reference_lambda(g: WeightedGraph) -> int:
    """Exact min-cut via Stoer-Wagner, on a certificate when that shrinks.

    The certificate order is the minimum weighted degree (an upper bound on
    the min-cut, so all cuts up to it survive exactly); it is skipped when
    k(n-1) cannot undercut the total weight.
    """
    from .oracle_bench import stoer_wagner

    wdeg = [0] * g.n
    for u, v, w in g.edges:
        wdeg[u] += w
        wdeg[v] += w
    k = min(wdeg)
    h = g
    if k >= 1 and k * (g.n - 1) < total_weight(g) // 2:
        h = k_certificate(g, k)
    return stoer_wagner(h).value


def recover_partition(
    g: WeightedGraph, tree: RootedTree, candidate: CutCandidate
) -> frozenset[int]:
    """Vertex side realizing a 1- or 2-tree-edge candidate.

    Single edge: the lower endpoint's subtree. Disjoint pair: union of both
    subtrees. Nested pair: outer subtree minus inner. Normalized to the
    canonical smaller side.
    """
    idx = root_and_index(tree)

    def subtree(v: int) -> set[int]:
        return set(idx.order[idx.start[v] : idx.post[v] + 1])

    if len(candidate.edges) == 1:
        side = subtree(candidate.edges[0])
    else:
        e, f = candidate.edges
        if idx.in_subtree(e, f):
            side = subtree(e) - subtree(f)
        elif idx.in_subtree(f, e):
            side = subtree(f) - subtree(e)
        else:
            side = subtree(e) | subtree(f)
    return normalize_partition(side, g.n)


def _lambda_estimate(g: WeightedGraph, cfg: RunConfig) -> int:
    if cfg.lambda_hint is not None:
        if cfg.lambda_hint < 1:
            raise ValueError("lambda_hint must be positive")
        return cfg.lambda_hint
    if cfg.lambda_source == "approx":
        constants = HierarchyConstants.for_graph(g.n, cfg.scale)
        estimate, _ = approximate_mincut(
            g, constants, SeededRng(cfg.seed).stream("lambda")
        )
        return max(1, estimate // 2)
    return max(1, reference_lambda(g) // 2)


def exact_mincut(g: WeightedGraph, cfg: RunConfig | None = None) -> CutResult:
    """Minimum cut of g: sparsify, pack trees, scan each for 2-respecting cuts.

    Deterministic for a fixed seed at any thread count: per-tree searches
    read shared immutable structures and the reduction order is fixed.
    Disconnected input short-circuits to value 0 with one component as the
    partition.
    """
    cfg = cfg or RunConfig()
    if g.n < 2:
        raise ValueError("need at least 2 vertices")
    stats = {"cut_queries": 0, "forests": 0, "depth": 0}
    comps = connected_components(g)
    if len(comps) > 1:
        return CutResult(0, normalize_partition(comps[0], g.n), None, cfg.seed, stats)

    lam_est = _lambda_estimate(g, cfg)
    rng = SeededRng(cfg.seed)
    best: CutCandidate | None = None
    best_tree: RootedTree | None = None
    best_index = -1
    for attempt in range(cfg.repeat_seeds):
        tree_edge_lists = pack_for_mincut(
            g, cfg.epsilon_pack, lam_est, rng.stream("pack", attempt), cfg.pack_factor
        )
        seen: set[frozenset[tuple[int, int]]] = set()
        trees: list[RootedTree] = []
        for pairs in tree_edge_lists:
            key = frozenset(pairs)
            if key not in seen:
                seen.add(key)
                trees.append(root_tree(g.n, pairs))
        stats["forests"] += len(tree_edge_lists)

        per_tree: list[tuple[CutCandidate | None, OracleStats]] = []
        if cfg.threads > 1:
            def job(tree: RootedTree) -> tuple[CutCandidate | None, OracleStats]:
                s = OracleStats()
                return min_2_respecting(g, tree, cfg.epsilon_rq, s), s

            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                per_tree = list(pool.map(job, trees))
        else:
            for tree in trees:
                s = OracleStats()
                per_tree.append((min_2_respecting(g, tree, cfg.epsilon_rq, s), s))

        for i, (cand, s) in enumerate(per_tree):
            stats["cut_queries"] += s.cut_queries
            stats["depth"] = max(stats["depth"], s.max_depth)
            if cand is None:
                continue
            if best is None or cand.sort_key < best.sort_key:
                best = cand
                best_tree = trees[i]
                best_index = i

    assert best is not None and best_tree is not None
    partition = recover_partition(g, best_tree, best)
    realized = cut_value(g, partition)
    if realized != best.value:
        raise AssertionError(
            f"partition realizes {realized}, candidate claimed {best.value}"
        )
    return CutResult(best.value, partition, (best_index, best), cfg.seed, stats)


# ---------------------------------------------------------------------------
# CLI.


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parcut", description="minimum cut of a weighted graph file"
    )
    parser.add_argument("--mode", choices=("approx", "exact", "oracle"), default="exact")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--eps-pack", type=float, default=1.0 / 3.0)
    parser.add_argument("--eps-rq", type=float, default=0.125)
    parser.add_argument("--scale", type=float, default=1.0)
    parser.add_argument("--lambda-hint", type=int, default=None)
    parser.add_argument("--stats", action="store_true")
    parser.add_argument("file")
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    """Parse flags, run the requested mode, print one JSON object.

    Exit codes: 0 success, 1 input/parse errors, 2 bad flags.
    """
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with open(args.file, "rb") as fh:
            g = parse_graph(fh.read())
    except (OSError, GraphFormatError) as exc:
        print(f"parcut: {exc}", file=sys.stderr)
        return 1

    payload: dict
    if args.mode == "approx":
        constants = HierarchyConstants.for_graph(g.n, scale=args.scale)
        value, layer = approximate_mincut(
            g, constants, SeededRng(args.seed).stream("approx")
        )
        payload = {
            "schema": 1,
            "mode": "approx",
            "value": value,
            "layer": layer,
            "partition": None,
            "tree": None,
            "edges": [],
            "seed": args.seed,
            "stats": {},
        }
    elif args.mode == "oracle":
        from .oracle_bench import BRUTE_FORCE_LIMIT, brute_force_mincut, stoer_wagner

        res = (
            brute_force_mincut(g) if g.n <= BRUTE_FORCE_LIMIT else stoer_wagner(g)
        )
        payload = {
            "schema": 1,
            "mode": "oracle",
            "value": res.value,
            "partition": sorted(res.partition),
            "tree": None,
            "edges": [],
            "seed": args.seed,
            "stats": {},
        }
    else:
        try:
            cfg = RunConfig(
                mode="exact",
                epsilon_pack=args.eps_pack,
                epsilon_rq=args.eps_rq,
                scale=args.scale,
                seed=args.seed,
                threads=args.threads,
                lambda_hint=args.lambda_hint,
            )
            res = exact_mincut(g, cfg)
        except ValueError as exc:
            print(f"parcut: {exc}", file=sys.stderr)
            return 1
        tree_index, cand = res.witness if res.witness else (None, None)
        payload = {
            "schema": 1,
            "mode": "exact",
            "value": res.value,
            "partition": sorted(res.partition),
            "tree": tree_index,
            "edges": list(cand.edges) if cand else [],
            "seed": res.seed,
            "stats": res.stats if args.stats else {},
        }
    print(json.dumps(payload, separators=(",", ":")))
    return 0


def main() -> None:
    sys.exit(run_cli())

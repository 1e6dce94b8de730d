"""Minimum-cut toolkit.

Exact pipeline: sparsify -> greedy tree packing -> per-tree 2-respecting
search (bough decomposition, interest search, Monge minimization over
range-tree cut queries). Estimation pipeline: sampled/truncated/certificate
layer hierarchy with a layer scan. Oracles and a bench harness back both.
"""

from .approx_hierarchy import (
    CertificateLayer,
    Hierarchy,
    HierarchyConstants,
    approximate_mincut,
    build_certificate_hierarchy,
    build_truncated_exclusive_hierarchy,
    critical_layer,
    mincut_of_union,
)
from .driver import CutResult, RunConfig, exact_mincut, recover_partition, run_cli
from .graph_core import (
    Forest,
    GraphFormatError,
    SeededRng,
    VertexIdError,
    WeightedGraph,
    WeightRangeError,
    connected_components,
    cut_value,
    is_connected,
    parse_graph,
    sample_binomial,
    serialize_graph,
    spanning_forest,
    total_weight,
)
from .oracle_bench import (
    BenchRecord,
    OracleResult,
    bench_run,
    brute_force_cut_query,
    brute_force_mincut,
    brute_two_respect,
    monge_audit,
    stoer_wagner,
)
from .range_query import (
    CutOracle,
    RangeTree1D,
    RangeTree2D,
    build_1d,
    build_2d,
    build_cut_oracle,
    cost,
    cross_cost,
    cross_interested,
    cut_query,
    down_cost,
    down_interested,
    one_respecting_cost,
    query_1d,
    query_2d,
)
from .sparsify import SkeletonParams, build_sparsifier, k_certificate, sample_skeleton
from .tree_decomp import (
    CentroidTree,
    PathPartition,
    PostorderIndex,
    RootedTree,
    binarize,
    bough_decomposition,
    centroid_decomposition,
    root_and_index,
    root_paths,
    root_tree,
)
from .tree_pack import TreePacking, greedy_tree_packing, pack_for_mincut
from .two_respect import (
    CutCandidate,
    InterestEndpoints,
    PairGroup,
    group_pairs,
    interest_endpoints,
    interest_tuples,
    min_2_respecting,
    pair_min,
    single_path_min,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

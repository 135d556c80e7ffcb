"""Approximation algorithms for bottleneck spanning tree problems in metric
spaces: k disjoint trees over k-tuples, one tree over size-<=2 clusters, and
k equal-size trees, plus their lifts to bottleneck TSP tours and exhaustive
exact baselines for small instances."""

from .dbst import BucketPartition, DbstResult, bucketize, forest_from_tree, solve_dbst
from .errors import (
    AlgorithmInvariantError,
    BottleneckTreeError,
    DomainError,
    IdentifierError,
    InfeasibleError,
    OracleSizeError,
    PartitionError,
)
from .gbst import GbstResult, NodeSelection, build_t1, build_t2, select_nodes, solve_2gbst
from .labeling import Labeling, is_valid_labeling, konig_labeling, representatives
from .metric import (
    ClusterPartition,
    InstanceDocument,
    MetricInstance,
    MetricValidation,
    TuplePartition,
    instance_document_to_dict,
    parse_instance_document,
    validate_metric,
)
from .oracle import exact_bottleneck_tour, exact_dbst, exact_gbst, exact_pbst
from .pbst import (
    PbstResult,
    balanced_partition,
    partition_many,
    partition_three,
    partition_two,
    solve_pbst,
)
from .tours import TourResult, TourSet, lift_to_tours, tour_bottleneck
from .trees import (
    Forest,
    Tree,
    bottleneck,
    cube_hamiltonian_cycle,
    cube_hamiltonian_path,
    cube_hamiltonian_path_between,
    forest_bottleneck,
    hop_distance,
    longest_edge,
    minimum_spanning_tree,
    split_tree_at_edge,
)

__all__ = [
    "AlgorithmInvariantError",
    "BottleneckTreeError",
    "BucketPartition",
    "ClusterPartition",
    "DbstResult",
    "DomainError",
    "Forest",
    "GbstResult",
    "IdentifierError",
    "InfeasibleError",
    "InstanceDocument",
    "Labeling",
    "MetricInstance",
    "MetricValidation",
    "NodeSelection",
    "OracleSizeError",
    "PartitionError",
    "PbstResult",
    "TourResult",
    "TourSet",
    "Tree",
    "TuplePartition",
    "balanced_partition",
    "bottleneck",
    "bucketize",
    "build_t1",
    "build_t2",
    "cube_hamiltonian_cycle",
    "cube_hamiltonian_path",
    "cube_hamiltonian_path_between",
    "exact_bottleneck_tour",
    "exact_dbst",
    "exact_gbst",
    "exact_pbst",
    "forest_bottleneck",
    "forest_from_tree",
    "hop_distance",
    "instance_document_to_dict",
    "is_valid_labeling",
    "konig_labeling",
    "lift_to_tours",
    "longest_edge",
    "minimum_spanning_tree",
    "parse_instance_document",
    "partition_many",
    "partition_three",
    "partition_two",
    "representatives",
    "select_nodes",
    "solve_2gbst",
    "solve_dbst",
    "solve_pbst",
    "split_tree_at_edge",
    "tour_bottleneck",
    "validate_metric",
]

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bottleneck_trees import (
    ClusterPartition,
    DomainError,
    IdentifierError,
    MetricInstance,
    PartitionError,
    TuplePartition,
    instance_document_to_dict,
    parse_instance_document,
    validate_metric,
)
from bottleneck_trees.generators import euclidean_instance, random_metric_instance


def test_distance_on_a_line():
    inst = MetricInstance.from_coordinates([(0.0,), (3.0,)])
    assert inst.distance(0, 1) == 3.0
    assert inst.distance(1, 0) == 3.0


def test_distance_self_is_zero():
    inst = MetricInstance.from_coordinates([(1.0, 2.0), (4.0, 6.0)])
    for u in range(2):
        assert inst.distance(u, u) == 0.0


def test_distance_matrix_readback():
    inst = MetricInstance.from_matrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert inst.distance(0, 2) == 2.0


def test_distance_bad_id():
    inst = MetricInstance.from_coordinates([(0.0,), (1.0,)])
    with pytest.raises(IdentifierError):
        inst.distance(0, 2)
    with pytest.raises(IdentifierError):
        inst.distance(-1, 0)


def test_validate_metric_path_matrix_ok():
    inst = MetricInstance.from_matrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert validate_metric(inst).ok


def test_validate_metric_triangle_violation():
    inst = MetricInstance.from_matrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    report = validate_metric(inst)
    assert not report.ok
    assert ("triangle", 0, 1, 2) in report.violations


def test_validate_metric_symmetry_and_diagonal():
    inst = MetricInstance.from_matrix([[1, 2], [3, 0]])
    report = validate_metric(inst)
    tags = {v[0] for v in report.violations}
    assert "diagonal" in tags and "symmetry" in tags


def test_validate_metric_euclidean_always_ok():
    rng = random.Random(0)
    inst = euclidean_instance(3, 12, rng)
    assert validate_metric(inst).ok


@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_random_metric_generator_is_metric(n, seed):
    inst = random_metric_instance(n, random.Random(seed))
    assert validate_metric(inst).ok
    for u in range(n):
        for v in range(n):
            assert inst.distance(u, v) == inst.distance(v, u)
            assert inst.distance(u, v) >= 0.0


def test_tuple_partition_validation():
    TuplePartition(k=2, tuples=((0, 1), (2, 3)))
    with pytest.raises(PartitionError):
        TuplePartition(k=2, tuples=((0, 1), (1, 2)))  # overlap
    with pytest.raises(PartitionError):
        TuplePartition(k=2, tuples=((0, 1), (2, 4)))  # gap in the universe
    with pytest.raises(PartitionError):
        TuplePartition(k=3, tuples=((0, 1), (2, 3)))  # wrong group size
    with pytest.raises(PartitionError):
        TuplePartition(k=1, tuples=((0,),))


def test_cluster_partition_validation():
    cp = ClusterPartition(k=2, clusters=((1,), (0, 2)))
    assert cp.point_ids() == [0, 1, 2]
    with pytest.raises(PartitionError):
        ClusterPartition(k=2, clusters=((0, 1, 2),))
    with pytest.raises(PartitionError):
        ClusterPartition(k=2, clusters=((0,), (0, 1)))


def test_instance_document_roundtrip():
    doc = parse_instance_document(
        {
            "points": {"coordinates": [[0.0], [1.0], [2.0], [3.0]]},
            "tuples": [[0, 3], [1, 2]],
            "k": 2,
        }
    )
    assert doc.instance.point_count == 4
    assert doc.tuples is not None and doc.tuples.k == 2
    again = parse_instance_document(json.loads(json.dumps(instance_document_to_dict(doc))))
    assert again.instance == doc.instance
    assert again.tuples == doc.tuples


def test_instance_document_rejects_non_metric_matrix():
    with pytest.raises(DomainError):
        parse_instance_document({"points": {"matrix": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]}})


def test_instance_document_rejects_unknown_geometry():
    with pytest.raises(DomainError):
        parse_instance_document({"points": {}})

"""Acceptance suite: one test per advertised guarantee, at fixed tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line
per criterion.  All randomness is seeded; reruns are byte-identical.
"""

import functools
import random
from itertools import product

from bottleneck_trees import (
    Labeling,
    Tree,
    bottleneck,
    bucketize,
    build_t2,
    exact_bottleneck_tour,
    exact_dbst,
    exact_gbst,
    exact_pbst,
    forest_from_tree,
    hop_distance,
    is_valid_labeling,
    konig_labeling,
    lift_to_tours,
    minimum_spanning_tree,
    partition_many,
    partition_three,
    partition_two,
    representatives,
    select_nodes,
    solve_2gbst,
    solve_dbst,
    solve_pbst,
)
from bottleneck_trees.cli import (
    dbst_result_to_dict,
    gbst_result_to_dict,
    pbst_result_to_dict,
    _dumps,
)
from bottleneck_trees.gbst import SELECTED
from bottleneck_trees.generators import (
    euclidean_instance,
    gbst_path8,
    generate,
    random_clusters,
    random_metric_instance,
    random_tree,
    random_tuples,
    spider_instance,
    spider_tree,
)
from bottleneck_trees.metric import InstanceDocument, instance_document_to_dict

TOL = 1e-9


def criterion(num, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {num}: FAIL  {name}")
                raise
            print(f"criterion {num}: PASS  {name}")

        return wrapper

    return decorate


def _bounded(achieved, factor, optimal):
    if optimal == 0.0:
        return achieved <= TOL
    return achieved <= factor * optimal + TOL


def _instance(kind, n, rng):
    if kind == "euclidean":
        return euclidean_instance(2, n, rng)
    return random_metric_instance(n, rng)


@criterion(1, "k-DBST achieved/optimal <= 3k-2 over seeded random instances")
def test_criterion_1_dbst_ratio():
    configs = [(2, n, kind) for n in range(2, 7) for kind in ("euclidean", "random-metric")]
    configs += [(3, n, kind) for n in range(2, 5) for kind in ("euclidean", "random-metric")]
    for k, n, kind in configs:
        factor = 3 * k - 2
        base = (k * 100 + n) * 100_003 + (0 if kind == "euclidean" else 50_000_017)
        for seed in range(1000):
            rng = random.Random(base + seed)
            inst = _instance(kind, k * n, rng)
            tuples = random_tuples(k * n, k, rng)
            result = solve_dbst(inst, tuples)
            _, optimal = exact_dbst(inst, tuples)
            assert _bounded(result.bottleneck, factor, optimal), (k, n, kind, seed)
            if k == 2 and not result.shortcut:
                assert result.mst_bottleneck <= optimal + TOL, (n, kind, seed)


@criterion(2, "k-DBST hop and bucket-diameter invariants; spiders attain 2k-2")
def test_criterion_2_dbst_hops():
    rng = random.Random(0xD857)
    for trial in range(1000):
        k = 2 + trial % 5
        if trial == 0:
            groups = 5000  # 10^4-node tree
        elif trial == 500:
            k, groups = 5, 2000  # 10^4 nodes again, wide labels
        else:
            groups = rng.randint(2, 30)
        tree = random_tree(k * groups, rng)
        rooted = tree.rooted_at(min(tree.leaves()))
        tuples = random_tuples(k * groups, k, rng)
        forest, buckets, _ = forest_from_tree(rooted, tuples)
        for sub in forest.trees:
            for u, v in sub.edges:
                assert hop_distance(rooted, u, v) <= 3 * k - 2
        for bucket in buckets.buckets:
            for i, a in enumerate(bucket):
                for b in bucket[i + 1 :]:
                    assert hop_distance(rooted, a, b) <= 2 * k - 2
    for k in (4, 5):
        tree = spider_tree(k)
        rooted = tree.rooted_at(min(tree.leaves()))
        worst = 0
        for bucket in bucketize(rooted, k).buckets:
            for i, a in enumerate(bucket):
                for b in bucket[i + 1 :]:
                    worst = max(worst, hop_distance(rooted, a, b))
        assert worst == 2 * k - 2, k


@criterion(3, "2-GBST achieved/optimal <= 3; the 8-node path fixture is tight")
def test_criterion_3_gbst_ratio():
    for seed in range(1000):
        rng = random.Random(31_000 + seed)
        n = rng.randint(2, 12)
        inst = _instance("euclidean" if seed % 2 else "random-metric", n, rng)
        extra = 2 * rng.randrange(0, n // 4 + 1)
        singletons = min(n % 2 + extra, n - (n - (n % 2 + extra)) % 2)
        clusters = random_clusters(n, rng, singletons=singletons)
        result = solve_2gbst(inst, clusters)
        _, optimal = exact_gbst(inst, clusters)
        assert _bounded(result.bottleneck, 3, optimal), seed
        for g in clusters.clusters:
            assert len(result.tree.nodes & set(g)) == 1
    fixture = gbst_path8()
    assert fixture.clusters is not None
    _, optimal = exact_gbst(fixture.instance, fixture.clusters)
    assert optimal == 3.0
    result = solve_2gbst(fixture.instance, fixture.clusters)
    assert result.t1.nodes == frozenset(range(8))
    hops = [hop_distance(result.t1, u, v) for u, v in result.tree.edges]
    assert max(hops) == 3


@criterion(4, "selection tree: one node per cluster, every edge <= 3 hops")
def test_criterion_4_selection_hops():
    rng = random.Random(0x5E1E)
    for _ in range(10_000):
        n = rng.randint(1, 60)
        tree = random_tree(n, rng)
        clusters = random_clusters(n, rng)
        singles = []
        for g in clusters.clusters:
            if len(g) == 1:
                singles.append(g[0])
        t1 = tree.rooted_at(min(singles) if singles else min(tree.nodes))
        sel = select_nodes(t1, clusters)
        assert set(sel.status) == set(tree.nodes)
        for g in clusters.clusters:
            assert sum(1 for p in g if sel.status[p] == SELECTED) == 1
        t2 = build_t2(t1, sel)  # Tree construction verifies connectivity
        for u, v in t2.edges:
            assert hop_distance(t1, u, v) <= 3


@criterion(5, "balanced tree partitioning: sizes exact, hops <= 2 (k=2,3) / <= 3 (k>=4)")
def test_criterion_5_balanced_partitioning():
    rng = random.Random(0xBA1A)
    for trial in range(1000):
        n2 = rng.randint(2, 40)
        tree = random_tree(n2, rng)
        size_r = rng.randint(1, n2 - 1)
        r, b = partition_two(tree, size_r)
        assert len(r.nodes) == size_r and len(b.nodes) == n2 - size_r
        for u, v in list(r.edges) + list(b.edges):
            assert hop_distance(tree, u, v) <= 2

        n3 = 3 * rng.randint(1, 13)
        tree3 = random_tree(n3, rng)
        parts = partition_three(tree3)
        for part in parts:
            assert len(part.nodes) == n3 // 3
            for u, v in part.edges:
                assert hop_distance(tree3, u, v) <= 2

        k = rng.randint(4, 8)
        nk = k * rng.randint(1, 8)
        treek = random_tree(nk, rng)
        forest = partition_many(treek, k)
        for part in forest.trees:
            assert len(part.nodes) == nk // k
            for u, v in part.edges:
                assert hop_distance(treek, u, v) <= 3

    # stars force a hop-2 edge for k=2 and k=3
    star = Tree(frozenset(range(4)), tuple((0, i) for i in range(1, 4)))
    r, b = partition_two(star, 2)
    assert max(hop_distance(star, u, v) for t in (r, b) for u, v in t.edges) == 2
    star5 = Tree(frozenset(range(6)), tuple((0, i) for i in range(1, 6)))
    parts = partition_three(star5)
    assert max(hop_distance(star5, u, v) for t in parts for u, v in t.edges) == 2

    # the 16-node spider cannot be split better than hop 3
    _, optimal = exact_pbst(spider_instance(4), 4)
    assert optimal == 3.0
    forest = partition_many(spider_tree(4), 4)
    spider = spider_tree(4)
    assert all(
        hop_distance(spider, u, v) <= 3 for t in forest.trees for u, v in t.edges
    )


@criterion(6, "k-PBST achieved/optimal <= 2 for k=2; spider metric within 3")
def test_criterion_6_pbst_ratio():
    for n in (3, 4, 5):
        for seed in range(500):
            rng = random.Random(60_000 + 1000 * n + seed)
            inst = _instance("euclidean" if seed % 2 else "random-metric", 2 * n, rng)
            result = solve_pbst(inst, 2)
            _, optimal = exact_pbst(inst, 2)
            assert _bounded(result.bottleneck, 2, optimal), (n, seed)
    inst = spider_instance(4)
    result = solve_pbst(inst, 4)
    _, optimal = exact_pbst(inst, 4)
    assert _bounded(result.bottleneck, 3, optimal)


def _exact_disjoint_tours_value(inst, tuples):
    best = None
    for bits in product((0, 1), repeat=tuples.group_count - 1):
        choice = (0,) + bits
        groups = [[], []]
        for members, flip in zip(tuples.tuples, choice):
            groups[flip].append(members[0])
            groups[1 - flip].append(members[1])
        value = max(exact_bottleneck_tour(inst, g)[1] for g in groups)
        if best is None or value < best:
            best = value
    return best


@criterion(7, "tour lifting: gaps <= 3 hops, 2-DBST tours within 12x, tree* <= tour*")
def test_criterion_7_tours():
    for seed in range(300):
        rng = random.Random(70_000 + seed)
        n = rng.choice([3, 4])
        inst = _instance("euclidean" if seed % 2 else "random-metric", 2 * n, rng)
        tuples = random_tuples(2 * n, 2, rng)
        result = solve_dbst(inst, tuples)
        lifted = lift_to_tours(result.forest, inst)
        for tree, tour in zip(result.forest.trees, lifted.tour_set.tours):
            assert sorted(tour) == sorted(tree.nodes)
            for i in range(len(tour)):
                assert hop_distance(tree, tour[i], tour[(i + 1) % len(tour)]) <= 3
        tour_opt = _exact_disjoint_tours_value(inst, tuples)
        assert _bounded(lifted.bottleneck, 12, tour_opt), seed
        size = rng.randint(3, min(7, 2 * n))
        subset = rng.sample(range(2 * n), size)
        tree_opt = bottleneck(minimum_spanning_tree(inst, subset), inst)
        _, tour_sub_opt = exact_bottleneck_tour(inst, subset)
        assert tree_opt <= tour_sub_opt + TOL


@criterion(8, "representative labelings valid on random double partitions")
def test_criterion_8_labeling():
    rng = random.Random(0x1AB)
    for _ in range(10_000):
        k = rng.randint(2, 5)
        n = rng.randint(1, 50)
        ids = list(range(k * n))
        rng.shuffle(ids)
        a = [tuple(ids[i : i + k]) for i in range(0, k * n, k)]
        rng.shuffle(ids)
        b = [tuple(ids[i : i + k]) for i in range(0, k * n, k)]
        lab = konig_labeling(a, b, k)
        assert is_valid_labeling(lab, a, b)
    # the worked 12-element double partition and its published answers
    a = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)]
    b = [(3, 8, 11), (1, 7, 10), (0, 2, 4), (5, 6, 9)]
    reps, pi = representatives(a, b)
    for i, r in enumerate(reps):
        assert r in a[i] and r in b[pi[i]]
    known_reps, known_pi = [0, 5, 7, 11], [2, 3, 1, 0]
    for i, r in enumerate(known_reps):
        assert r in a[i] and r in b[known_pi[i]]
    printed = Labeling(
        labels={0: 0, 5: 0, 7: 0, 11: 0, 1: 1, 4: 1, 8: 1, 9: 1, 2: 2, 3: 2, 6: 2, 10: 2},
        k=3,
    )
    assert is_valid_labeling(printed, a, b)


@criterion(9, "identical seeds produce byte-identical serialized outputs")
def test_criterion_9_determinism():
    def generated_bytes(kind, params, seed):
        gen = generate(kind, dict(params), seed)
        doc = InstanceDocument(instance=gen.instance, tuples=gen.tuples, clusters=gen.clusters)
        return _dumps(instance_document_to_dict(doc))

    gen_specs = [
        ("euclidean", {"n": 10, "dim": 2, "partition": "tuples", "k": 2}, 7),
        ("euclidean", {"n": 9, "dim": 3, "partition": "clusters"}, 8),
        ("random-metric", {"n": 8, "partition": "tuples", "k": 2}, 9),
        ("fixture-star", {"leaves": 3}, 0),
        ("fixture-spider", {"k": 4}, 0),
        ("fixture-gbst-path8", {}, 0),
    ]
    for kind, params, seed in gen_specs:
        assert generated_bytes(kind, params, seed) == generated_bytes(kind, params, seed)

    def solve_all_bytes(seed):
        rng = random.Random(seed)
        inst = random_metric_instance(8, rng)
        tuples = random_tuples(8, 2, rng)
        clusters = random_clusters(8, rng, singletons=2)
        doc_t = InstanceDocument(instance=inst, tuples=tuples)
        doc_c = InstanceDocument(instance=inst, clusters=clusters)
        parts = [
            _dumps(dbst_result_to_dict(solve_dbst(inst, tuples), doc_t, True, True)),
            _dumps(gbst_result_to_dict(solve_2gbst(inst, clusters), doc_c, True, False)),
            _dumps(pbst_result_to_dict(solve_pbst(inst, 2), doc_t, 2, True, True)),
        ]
        return "".join(parts)

    for seed in range(5):
        assert solve_all_bytes(seed) == solve_all_bytes(seed)

"""k disjoint bottleneck spanning trees over points partitioned into k-tuples.

The driver computes a minimum spanning tree, carves its nodes into buckets of
size k with small internal hop diameter, labels points so that every tuple
and every bucket carries each of the k labels once, and wires same-label
points bucket-to-parent-bucket.  Every realized edge then spans at most
3k-2 tree hops, which bounds its length by (3k-2) times the tree bottleneck.
For k=2 an optimal shortcut applies when some longest-edge split of the tree
separates every tuple.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import AlgorithmInvariantError, DomainError, PartitionError
from .labeling import Labeling, konig_labeling
from .metric import MetricInstance, TuplePartition
from .trees import (
    Forest,
    Tree,
    forest_bottleneck,
    longest_edge,
    minimum_spanning_tree,
    split_tree_at_edge,
)


@dataclass(frozen=True)
class BucketPartition:
    """Ordered size-k buckets over a rooted tree's nodes.

    Bucket j was extracted from the subtree of its representative node; the
    parent bucket is the one holding the representative (or, when the
    representative fell into bucket j itself, the one holding its tree
    parent).  Parent indices strictly increase, so the last bucket is the
    unique sink.
    """

    buckets: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    parent_bucket: tuple[int | None, ...]


def bucketize(tree: Tree, k: int) -> BucketPartition:
    """Split a rooted tree's nodes into buckets of k, bottom-up.

    Each round picks the node v whose current subtree is smallest among
    those of size at least k (ties to the lowest id); since every child
    subtree of v then has fewer than k nodes, any two nodes under v are at
    most 2k-2 hops apart.  The bucket is filled by repeatedly removing the
    deepest leaf of v's subtree (ties to the lowest id).
    """
    if tree.root is None:
        raise DomainError("bucketize needs a rooted tree")
    count = len(tree.nodes)
    if count % k != 0:
        raise PartitionError(f"node count {count} is not divisible by k={k}")

    parent = tree.parent_map
    depth = tree.depth_map
    kids = {v: set(cs) for v, cs in tree.children_map().items()}
    size = tree.subtree_sizes()
    alive = set(tree.nodes)

    cand: list[tuple[int, int]] = [(s, v) for v, s in size.items() if s >= k]
    heapq.heapify(cand)

    buckets: list[tuple[int, ...]] = []
    reps: list[int] = []
    while alive:
        while True:
            s, v = heapq.heappop(cand)
            if v in alive and size[v] == s and s >= k:
                break
        # Snapshot v's current subtree and peel k deepest leaves off it.
        sub: list[int] = []
        stack = [v]
        while stack:
            x = stack.pop()
            sub.append(x)
            stack.extend(kids[x])
        leaf_heap = [(-depth[x], x) for x in sub if not kids[x]]
        heapq.heapify(leaf_heap)
        bucket: list[int] = []
        for _ in range(k):
            _, leaf = heapq.heappop(leaf_heap)
            bucket.append(leaf)
            alive.remove(leaf)
            p = parent[leaf]
            if p is not None:
                kids[p].remove(leaf)
                if leaf != v and not kids[p]:
                    heapq.heappush(leaf_heap, (-depth[p], p))
            anc = p
            while anc is not None:
                size[anc] -= 1
                if size[anc] >= k:
                    heapq.heappush(cand, (size[anc], anc))
                anc = parent[anc]
        buckets.append(tuple(bucket))
        reps.append(v)

    bucket_index: dict[int, int] = {}
    for j, bucket in enumerate(buckets):
        for p in bucket:
            bucket_index[p] = j
    parents: list[int | None] = []
    for j, v in enumerate(reps):
        if v not in buckets[j]:
            parents.append(bucket_index[v])
        else:
            pv = parent[v]
            parents.append(bucket_index[pv] if pv is not None else None)
    for j, pj in enumerate(parents[:-1]):
        if pj is None or pj <= j:
            raise AlgorithmInvariantError(f"bucket {j} has no later parent bucket (got {pj})")
    if parents[-1] is not None:
        raise AlgorithmInvariantError("the final bucket must be the parent-chain sink")
    return BucketPartition(tuple(buckets), tuple(reps), tuple(parents))


def forest_from_tree(
    tree: Tree, tuples: TuplePartition
) -> tuple[Forest, BucketPartition, Labeling]:
    """Buckets, labels, and the k wired trees for a rooted tree.

    The tree's nodes must be exactly the partition's universe.  Tree c
    collects the label-c point of each bucket; each non-final bucket's point
    connects to the same label in its parent bucket, and the final bucket
    holds the k roots.
    """
    k = tuples.k
    if tree.nodes != frozenset(range(tuples.point_count)):
        raise PartitionError("tree nodes must be exactly the tuple partition's points")
    bp = bucketize(tree, k)
    lab = konig_labeling(tuples.tuples, bp.buckets, k)
    m = len(bp.buckets)
    slot = [[-1] * k for _ in range(m)]
    for j, bucket in enumerate(bp.buckets):
        for p in bucket:
            slot[j][lab.labels[p]] = p
    edge_lists: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for j in range(m):
        pj = bp.parent_bucket[j]
        if pj is None:
            continue
        for c in range(k):
            edge_lists[c].append((slot[j][c], slot[pj][c]))
    trees = tuple(
        Tree(
            frozenset(slot[j][c] for j in range(m)),
            tuple(edge_lists[c]),
            root=slot[m - 1][c],
        )
        for c in range(k)
    )
    return Forest(trees), bp, lab


@dataclass(frozen=True)
class DbstResult:
    forest: Forest
    bottleneck: float
    mst: Tree
    mst_bottleneck: float
    labels: tuple[int, ...]
    shortcut: bool
    buckets: BucketPartition | None


def solve_dbst(instance: MetricInstance, tuples: TuplePartition) -> DbstResult:
    """k node-disjoint trees, one point of every tuple each.

    The achieved bottleneck is at most (3k-2) times the optimum.  For k=2,
    if removing a longest tree edge leaves every tuple with one point per
    side, the two sides themselves are returned (and are optimal).
    """
    k = tuples.k
    if instance.point_count != tuples.point_count:
        raise PartitionError(
            f"instance has {instance.point_count} points but the tuples cover "
            f"{tuples.point_count}"
        )
    mst = minimum_spanning_tree(instance, instance.points())
    _, mst_bot = longest_edge(mst, instance)

    if k == 2:
        for e in mst.edges:
            if instance.distance(*e) != mst_bot:
                continue
            side_u, side_v = split_tree_at_edge(mst, e)
            if all(len(side_u.nodes & set(t)) == 1 for t in tuples.tuples):
                forest = Forest((side_u, side_v))
                labels = tuple(
                    0 if p in side_u.nodes else 1 for p in instance.points()
                )
                return DbstResult(
                    forest=forest,
                    bottleneck=forest_bottleneck(forest, instance),
                    mst=mst,
                    mst_bottleneck=mst_bot,
                    labels=labels,
                    shortcut=True,
                    buckets=None,
                )

    rooted = mst.rooted_at(min(mst.leaves()))
    forest, bp, lab = forest_from_tree(rooted, tuples)
    labels = tuple(lab.labels[p] for p in instance.points())
    return DbstResult(
        forest=forest,
        bottleneck=forest_bottleneck(forest, instance),
        mst=mst,
        mst_bottleneck=mst_bot,
        labels=labels,
        shortcut=False,
        buckets=bp,
    )

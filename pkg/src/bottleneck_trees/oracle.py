"""Exhaustive optimal solvers for tiny instances, used as ground truth.

Every oracle enforces a hard size cap and raises rather than truncating:
an approximate oracle is worthless as a baseline.  A group of points is
connectable with edges up to d exactly when it is connected in the graph of
all pairs at distance <= d, so group quality is measured by that threshold
(equivalently, the group's minimum spanning tree bottleneck).
"""

from __future__ import annotations

from itertools import permutations, product
from math import comb

from .errors import DomainError, OracleSizeError, PartitionError
from .metric import ClusterPartition, MetricInstance, TuplePartition
from .trees import Forest, Tree, minimum_spanning_tree


def _group_threshold(instance: MetricInstance, points) -> float:
    """Smallest possible largest edge of a spanning tree on the points."""
    pts = sorted(points)
    if len(pts) <= 1:
        return 0.0
    in_tree = {pts[0]}
    best = {p: instance.distance(p, pts[0]) for p in pts[1:]}
    worst = 0.0
    while best:
        p = min(best, key=lambda q: (best[q], q))
        worst = max(worst, best.pop(p))
        in_tree.add(p)
        for q in best:
            d = instance.distance(p, q)
            if d < best[q]:
                best[q] = d
    return worst


def exact_dbst(
    instance: MetricInstance, tuples: TuplePartition
) -> tuple[Forest, float]:
    """Optimal k disjoint trees by enumerating tuple-to-tree assignments.

    The first tuple's assignment is pinned to kill the k! tree-relabeling
    symmetry; capped at k <= 3 and n <= 6 tuples.
    """
    k, n = tuples.k, tuples.group_count
    if k > 3 or n > 6:
        raise OracleSizeError(f"exact_dbst is capped at k<=3, n<=6 (got k={k}, n={n})")
    if instance.point_count != tuples.point_count:
        raise PartitionError("tuples do not cover exactly the instance's points")
    identity = tuple(range(k))
    best_value: float | None = None
    best_groups: list[list[int]] | None = None
    for perms in product(permutations(range(k)), repeat=n - 1):
        assignment = (identity,) + perms
        groups: list[list[int]] = [[] for _ in range(k)]
        for members, perm in zip(tuples.tuples, assignment):
            for pos, tree_idx in enumerate(perm):
                groups[tree_idx].append(members[pos])
        value = max(_group_threshold(instance, g) for g in groups)
        if best_value is None or value < best_value:
            best_value, best_groups = value, groups
    assert best_groups is not None and best_value is not None
    forest = Forest(tuple(minimum_spanning_tree(instance, g) for g in best_groups))
    return forest, best_value


def exact_gbst(
    instance: MetricInstance, clusters: ClusterPartition
) -> tuple[Tree, float]:
    """Optimal cluster-spanning tree by enumerating representative choices."""
    if len(clusters.clusters) > 12:
        raise OracleSizeError(
            f"exact_gbst is capped at 12 clusters (got {len(clusters.clusters)})"
        )
    if clusters.max_size() > 2:
        raise PartitionError("exact_gbst handles clusters of size at most 2")
    clusters.check_covers(instance)
    best_value: float | None = None
    best_choice: tuple[int, ...] | None = None
    for choice in product(*clusters.clusters):
        value = _group_threshold(instance, choice)
        if best_value is None or value < best_value:
            best_value, best_choice = value, choice
    assert best_choice is not None and best_value is not None
    return minimum_spanning_tree(instance, best_choice), best_value


def _partition_cost_cap(total: int, k: int, n: int) -> int:
    count = 1
    remaining = total
    for _ in range(k):
        count *= comb(remaining, n)
        remaining -= n
    for i in range(2, k + 1):
        count //= i
    return count


def exact_pbst(instance: MetricInstance, k: int) -> tuple[Forest, float]:
    """Optimal k equal trees via a threshold search over pairwise distances.

    A partition achieves bottleneck <= d iff each group is connected among
    edges of length <= d, which is monotone in d; the smallest feasible
    candidate distance is found by bisection, with feasibility decided by a
    backtracking search that grows one connected group at a time (each group
    anchored at its smallest unassigned point, killing group symmetry).
    """
    total = instance.point_count
    if k < 2:
        raise DomainError("exact_pbst needs k >= 2")
    if total % k != 0:
        raise PartitionError(f"{total} points cannot split into k={k} equal groups")
    n = total // k
    if total > 24 or _partition_cost_cap(total, k, n) > 10**7:
        raise OracleSizeError(
            f"exact_pbst is capped near 10^7 unordered partitions "
            f"(kn={total}, k={k} is too large)"
        )
    if n == 1:
        forest = Forest(tuple(Tree(frozenset({p}), ()) for p in instance.points()))
        return forest, 0.0

    points = list(instance.points())
    candidates = sorted(
        {0.0}
        | {
            instance.distance(u, v)
            for i, u in enumerate(points)
            for v in points[i + 1 :]
        }
    )

    def feasible(d: float) -> list[list[int]] | None:
        adj = {
            u: [v for v in points if v != u and instance.distance(u, v) <= d]
            for u in points
        }
        unassigned = set(points)
        groups: list[list[int]] = []

        def reachable_enough(group: list[int], banned: set[int]) -> bool:
            seen = set(group)
            stack = list(group)
            found = len(group)
            while stack and found < n:
                x = stack.pop()
                for y in adj[x]:
                    if y in unassigned and y not in seen and y not in banned:
                        seen.add(y)
                        found += 1
                        stack.append(y)
            return found >= n

        def grow(group: list[int], banned: set[int]) -> bool:
            if len(group) == n:
                for p in group:
                    unassigned.discard(p)
                groups.append(group)
                if not unassigned or next_group():
                    return True
                groups.pop()
                unassigned.update(group)
                return False
            if not reachable_enough(group, banned):
                return False
            candidates_here = sorted(
                y
                for x in group
                for y in adj[x]
                if y in unassigned and y not in banned and y not in group
            )
            if not candidates_here:
                return False
            pick = candidates_here[0]
            if grow(group + [pick], banned):
                return True
            return grow(group, banned | {pick})

        def next_group() -> bool:
            leader = min(unassigned)
            return grow([leader], set())

        if next_group():
            return groups
        return None

    lo, hi = 0, len(candidates) - 1
    best_groups = feasible(candidates[hi])
    if best_groups is None:
        raise DomainError("the complete metric graph must always be partitionable")
    while lo < hi:
        mid = (lo + hi) // 2
        attempt = feasible(candidates[mid])
        if attempt is not None:
            best_groups = attempt
            hi = mid
        else:
            lo = mid + 1
    forest = Forest(
        tuple(minimum_spanning_tree(instance, g) for g in best_groups)
    )
    return forest, candidates[hi]


def exact_bottleneck_tour(
    instance: MetricInstance, subset
) -> tuple[tuple[int, ...], float]:
    """Optimal bottleneck cycle over all tours of the subset.

    The first point is pinned and each direction counted once; capped at 9
    points.
    """
    pts = sorted(set(subset))
    if len(pts) < 3:
        raise DomainError("a tour needs at least three points")
    if len(pts) > 9:
        raise OracleSizeError(f"exact_bottleneck_tour is capped at 9 points (got {len(pts)})")
    for p in pts:
        instance._check_id(p)
    first = pts[0]
    best_tour: tuple[int, ...] | None = None
    best_value: float | None = None
    for perm in permutations(pts[1:]):
        if perm[0] > perm[-1]:
            continue
        tour = (first,) + perm
        value = max(
            instance.distance(tour[i], tour[(i + 1) % len(tour)])
            for i in range(len(tour))
        )
        if best_value is None or value < best_value:
            best_value, best_tour = value, tour
    assert best_tour is not None and best_value is not None
    return best_tour, best_value

"""One tree spanning exactly one point per cluster (clusters of size <= 2).

Two stages.  First a threshold sweep grows components edge by edge in
distance order and stops at the first component touching every cluster; its
spanning tree T1 has bottleneck no larger than any feasible solution's.
Second, a select-and-burn walk over rooted T1 keeps one node per cluster,
and every kept node can reach a kept node closer to the root within three
hops, giving a tree whose metric bottleneck is at most 3x that of T1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AlgorithmInvariantError,
    DomainError,
    InfeasibleError,
    PartitionError,
)
from .metric import ClusterPartition, MetricInstance
from .trees import Tree, bottleneck, minimum_spanning_tree

SELECTED = "selected"
BURNED = "burned"


@dataclass(frozen=True)
class NodeSelection:
    """Outcome of the walk: every node selected or burned, in visit order."""

    status: dict[int, str]
    visit_order: tuple[int, ...]

    def selected_nodes(self) -> list[int]:
        return sorted(v for v, s in self.status.items() if s == SELECTED)


def _check_pair_clusters(clusters: ClusterPartition) -> None:
    if clusters.max_size() > 2:
        raise PartitionError("this solver handles clusters of size at most 2")


def build_t1(instance: MetricInstance, clusters: ClusterPartition) -> Tree:
    """Smallest-threshold tree touching at least one point of every cluster.

    Candidate edges enter in ascending (distance, u, v) order; the sweep
    stops the moment one component covers all clusters, and that component's
    minimum spanning tree is returned (its bottleneck does not exceed the
    stopping threshold).
    """
    _check_pair_clusters(clusters)
    clusters.check_covers(instance)
    cluster_of = {p: i for i, g in enumerate(clusters.clusters) for p in g}
    m = len(clusters.clusters)
    if m == 1:
        p = clusters.clusters[0][0]
        return Tree(frozenset({p}), ())

    n = instance.point_count
    parent = list(range(n))
    covered: dict[int, set[int]] = {p: {cluster_of[p]} for p in range(n)}
    members: dict[int, list[int]] = {p: [p] for p in range(n)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ranked = sorted(
        (instance.distance(u, v), u, v) for u in range(n) for v in range(u + 1, n)
    )
    for _, u, v in ranked:
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        if len(members[ru]) < len(members[rv]):
            ru, rv = rv, ru
        parent[rv] = ru
        members[ru].extend(members.pop(rv))
        covered[ru] |= covered.pop(rv)
        if len(covered[ru]) == m:
            return minimum_spanning_tree(instance, members[ru])
    raise AlgorithmInvariantError("no component ever covered all clusters")


def select_nodes(t1: Tree, clusters: ClusterPartition) -> NodeSelection:
    """Visit all of t1, selecting exactly one node per cluster.

    Clusters with a single node inside t1 are selected up front.  Then,
    starting from the root (or the lowest-id open node when the root is
    taken), each step selects an open node and burns its cluster twin; the
    walk continues at the twin's open parent, else an open child of the twin,
    else restarts at the lowest-id open node.
    """
    _check_pair_clusters(clusters)
    if t1.root is None:
        raise DomainError("select_nodes needs a rooted tree")
    nodes = t1.nodes
    twin: dict[int, int] = {}
    forced: list[int] = []
    for g in clusters.clusters:
        inside = [p for p in g if p in nodes]
        if not inside:
            raise InfeasibleError(f"cluster {list(g)} has no node in the tree")
        if len(inside) == 1:
            forced.append(inside[0])
        else:
            a, b = inside
            twin[a] = b
            twin[b] = a

    status: dict[int, str] = {}
    visits: list[int] = []

    def visit(x: int, how: str) -> None:
        status[x] = how
        visits.append(x)

    for p in sorted(forced):
        visit(p, SELECTED)

    parent = t1.parent_map
    kids = t1.children_map()
    scan = sorted(nodes)
    scan_at = 0

    def lowest_open() -> int | None:
        nonlocal scan_at
        while scan_at < len(scan) and scan[scan_at] in status:
            scan_at += 1
        return scan[scan_at] if scan_at < len(scan) else None

    current = t1.root if t1.root not in status else lowest_open()
    while current is not None:
        a1 = current
        if a1 not in twin:
            raise AlgorithmInvariantError(f"open node {a1} has no cluster twin")
        visit(a1, SELECTED)
        a2 = twin[a1]
        if a2 in status:
            raise AlgorithmInvariantError(f"twin {a2} was already visited")
        visit(a2, BURNED)
        p = parent[a2]
        if p is not None and p not in status:
            current = p
            continue
        open_kids = [c for c in kids[a2] if c not in status]
        current = open_kids[0] if open_kids else lowest_open()
    return NodeSelection(status=status, visit_order=tuple(visits))


def build_t2(t1: Tree, selection: NodeSelection) -> Tree:
    """Tree on the selected nodes; every edge spans <= 3 hops in t1.

    Each selected node joins the nearest selected node strictly closer to
    the root, found by climbing: parent, grandparent, great-grandparent, and
    finally the twin's sibling that the walk selected right after burning
    the grandparent.
    """
    if t1.root is None:
        raise DomainError("build_t2 needs a rooted tree")
    status = selection.status
    if status.get(t1.root) != SELECTED:
        raise DomainError("the root of t1 must be a selected node")
    parent = t1.parent_map
    order = selection.visit_order
    next_visited = {order[i]: order[i + 1] for i in range(len(order) - 1)}

    selected = selection.selected_nodes()
    edges: list[tuple[int, int]] = []
    for a in selected:
        if a == t1.root:
            continue
        a1 = parent[a]
        assert a1 is not None
        if status[a1] == SELECTED:
            edges.append((a, a1))
            continue
        a2 = parent[a1]
        if a2 is None:
            raise AlgorithmInvariantError(f"burned node {a1} is the root")
        if status[a2] == SELECTED:
            edges.append((a, a2))
            continue
        a3 = parent[a2]
        if a3 is None:
            raise AlgorithmInvariantError(f"burned node {a2} is the root")
        if status[a3] == SELECTED:
            edges.append((a, a3))
            continue
        chosen_child = next_visited.get(a2)
        if (
            chosen_child is not None
            and status.get(chosen_child) == SELECTED
            and parent[chosen_child] == a2
        ):
            edges.append((a, chosen_child))
            continue
        raise AlgorithmInvariantError(
            f"no selected node within 3 hops above {a}; the selection walk is broken"
        )
    return Tree(frozenset(selected), tuple(edges), root=t1.root)


@dataclass(frozen=True)
class GbstResult:
    tree: Tree
    bottleneck: float
    t1: Tree
    t1_bottleneck: float
    selection: NodeSelection


def solve_2gbst(instance: MetricInstance, clusters: ClusterPartition) -> GbstResult:
    """One tree with exactly one point per cluster, bottleneck <= 3x optimal.

    T1 is rooted at a node whose cluster contributes nothing else to T1 when
    one exists (so the root is certainly selected); otherwise at the
    lowest-id node, where the walk starts and selects it.
    """
    t1 = build_t1(instance, clusters)
    singles = []
    for g in clusters.clusters:
        inside = [q for q in g if q in t1.nodes]
        if len(inside) == 1:
            singles.append(inside[0])
    root = min(singles) if singles else min(t1.nodes)
    t1 = t1.rooted_at(root)
    selection = select_nodes(t1, clusters)
    t2 = build_t2(t1, selection)
    return GbstResult(
        tree=t2,
        bottleneck=bottleneck(t2, instance),
        t1=t1,
        t1_bottleneck=bottleneck(t1, instance),
        selection=selection,
    )

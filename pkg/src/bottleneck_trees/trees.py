"""Combinatorial trees over point ids.

Provides minimum spanning trees with a deterministic edge tie-break (which
makes them bottleneck-optimal as well), the hop metric of a tree, and
Hamiltonian paths/cycles in the cube of a tree (consecutive nodes at most
three tree edges apart).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, IdentifierError
from .metric import MetricInstance


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


class UnionFind:
    """Disjoint sets over hashable items with path compression."""

    def __init__(self, items=()):
        self._parent: dict = {x: x for x in items}

    def find(self, x):
        parent = self._parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self._parent[ry] = rx
        return True


@dataclass(frozen=True)
class Tree:
    """An explicit tree: a node set, |nodes|-1 unordered edges, optional root.

    A single node with no edges is a valid tree.  Values are immutable;
    derived structure (adjacency, rooting) is cached lazily.
    """

    nodes: frozenset[int]
    edges: tuple[tuple[int, int], ...]
    root: int | None = None

    def __post_init__(self) -> None:
        nodes = frozenset(int(x) for x in self.nodes)
        edges = tuple(_normalize_edge(int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        if not nodes:
            raise DomainError("a tree needs at least one node")
        if len(edges) != len(nodes) - 1:
            raise DomainError(
                f"a tree on {len(nodes)} nodes needs {len(nodes) - 1} edges, got {len(edges)}"
            )
        uf = UnionFind(nodes)
        for u, v in edges:
            if u not in nodes or v not in nodes:
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside the node set")
            if not uf.union(u, v):
                raise DomainError(f"edges contain a cycle (adding ({u}, {v}))")
        if self.root is not None and self.root not in nodes:
            raise DomainError(f"root {self.root} is not a node of the tree")

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def leaves(self) -> list[int]:
        """Nodes of degree at most one, ascending (a lone node counts)."""
        return sorted(v for v, nbrs in self.adjacency.items() if len(nbrs) <= 1)

    def rooted_at(self, root: int) -> "Tree":
        if root not in self.nodes:
            raise IdentifierError(f"node {root} is not in the tree")
        if root == self.root:
            return self
        return Tree(self.nodes, self.edges, root=root)

    @cached_property
    def _rooting(self) -> tuple[dict[int, int | None], dict[int, int], tuple[int, ...]]:
        anchor = self.root if self.root is not None else min(self.nodes)
        parent: dict[int, int | None] = {anchor: None}
        depth: dict[int, int] = {anchor: 0}
        order = [anchor]
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for w in self.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    order.append(w)
        return parent, depth, tuple(order)

    def _require_root(self) -> None:
        if self.root is None:
            raise DomainError("operation requires a rooted tree")

    @property
    def parent_map(self) -> dict[int, int | None]:
        self._require_root()
        return self._rooting[0]

    @property
    def depth_map(self) -> dict[int, int]:
        self._require_root()
        return self._rooting[1]

    def children_map(self) -> dict[int, list[int]]:
        """Children per node (ascending), for the current root."""
        parent = self.parent_map
        kids: dict[int, list[int]] = {v: [] for v in self.nodes}
        for v, p in parent.items():
            if p is not None:
                kids[p].append(v)
        for lst in kids.values():
            lst.sort()
        return kids

    def subtree_sizes(self) -> dict[int, int]:
        """Number of nodes in the subtree rooted at each node, root included."""
        parent, _, order = self._rooting
        self._require_root()
        size = {v: 1 for v in self.nodes}
        for v in reversed(order):
            p = parent[v]
            if p is not None:
                size[p] += size[v]
        return size

    def subtree_nodes(self, v: int) -> set[int]:
        """Nodes of the subtree rooted at v, for the current root."""
        kids = self.children_map()
        out: set[int] = set()
        stack = [v]
        while stack:
            x = stack.pop()
            out.add(x)
            stack.extend(kids[x])
        return out


@dataclass(frozen=True)
class Forest:
    """A list of node-disjoint trees."""

    trees: tuple[Tree, ...]

    def __post_init__(self) -> None:
        trees = tuple(self.trees)
        object.__setattr__(self, "trees", trees)
        seen: set[int] = set()
        for t in trees:
            if seen & t.nodes:
                raise DomainError("forest trees must have pairwise disjoint node sets")
            seen |= t.nodes

    def all_nodes(self) -> set[int]:
        out: set[int] = set()
        for t in self.trees:
            out |= t.nodes
        return out


def minimum_spanning_tree(instance: MetricInstance, subset) -> Tree:
    """Minimum spanning tree of the complete metric graph on `subset`.

    Edges are considered in ascending (distance, u, v) order, which makes the
    result deterministic and simultaneously weight- and bottleneck-optimal.
    """
    points = sorted(set(subset))
    if not points:
        raise DomainError("cannot span an empty point set")
    for p in points:
        instance._check_id(p)
    if len(points) == 1:
        return Tree(frozenset(points), ())
    ranked = sorted(
        (instance.distance(u, v), u, v)
        for i, u in enumerate(points)
        for v in points[i + 1 :]
    )
    uf = UnionFind(points)
    chosen: list[tuple[int, int]] = []
    for _, u, v in ranked:
        if uf.union(u, v):
            chosen.append((u, v))
            if len(chosen) == len(points) - 1:
                break
    return Tree(frozenset(points), tuple(chosen))


def longest_edge(tree: Tree, instance: MetricInstance) -> tuple[tuple[int, int], float]:
    """The maximum-length edge and its length; ties go to the earliest edge."""
    if not tree.edges:
        raise DomainError("a single-node tree has no longest edge")
    best_edge = tree.edges[0]
    best = instance.distance(*best_edge)
    for e in tree.edges[1:]:
        w = instance.distance(*e)
        if w > best:
            best, best_edge = w, e
    return best_edge, best


def bottleneck(tree: Tree, instance: MetricInstance) -> float:
    """Largest edge length of the tree; 0 for a single node."""
    if not tree.edges:
        return 0.0
    return max(instance.distance(u, v) for u, v in tree.edges)


def forest_bottleneck(forest: Forest, instance: MetricInstance) -> float:
    return max((bottleneck(t, instance) for t in forest.trees), default=0.0)


def hop_distance(tree: Tree, u: int, v: int) -> int:
    """Number of edges on the unique tree path between u and v."""
    if u not in tree.nodes:
        raise IdentifierError(f"node {u} is not in the tree")
    if v not in tree.nodes:
        raise IdentifierError(f"node {v} is not in the tree")
    parent, depth, _ = tree._rooting
    hops = 0
    while depth[u] > depth[v]:
        u = parent[u]  # type: ignore[assignment]
        hops += 1
    while depth[v] > depth[u]:
        v = parent[v]  # type: ignore[assignment]
        hops += 1
    while u != v:
        u = parent[u]  # type: ignore[assignment]
        v = parent[v]  # type: ignore[assignment]
        hops += 2
    return hops


def split_tree_at_edge(tree: Tree, edge: tuple[int, int]) -> tuple[Tree, Tree]:
    """Remove one edge and return the two components (u-side, v-side)."""
    e = _normalize_edge(*edge)
    if e not in tree.edge_set:
        raise DomainError(f"({edge[0]}, {edge[1]}) is not an edge of the tree")
    u, v = e
    side_u = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for w in tree.adjacency[x]:
            if w not in side_u and _normalize_edge(x, w) != e:
                side_u.add(w)
                stack.append(w)
    side_v = set(tree.nodes) - side_u
    edges_u = tuple(f for f in tree.edges if f != e and f[0] in side_u)
    edges_v = tuple(f for f in tree.edges if f != e and f[0] in side_v)
    return Tree(frozenset(side_u), edges_u), Tree(frozenset(side_v), edges_v)


def _consume_neighbors(tree: Tree):
    """Adjacency with one-shot consumption in ascending id order.

    `delete(u, v)` removes the edge; `next_of(x)` returns x's smallest
    not-yet-deleted neighbor or None.  Each neighbor list is scanned with a
    monotone pointer, so total work is linear in the edge count.
    """
    adj = {x: list(nbrs) for x, nbrs in tree.adjacency.items()}
    ptr = {x: 0 for x in tree.nodes}
    deleted: set[tuple[int, int]] = set()

    def delete(u: int, v: int) -> None:
        deleted.add(_normalize_edge(u, v))

    def next_of(x: int) -> int | None:
        lst = adj[x]
        i = ptr[x]
        while i < len(lst) and _normalize_edge(x, lst[i]) in deleted:
            i += 1
        ptr[x] = i
        return lst[i] if i < len(lst) else None

    return delete, next_of


def cube_hamiltonian_path(tree: Tree, u: int, v: int) -> list[int]:
    """Order all nodes from u to v with consecutive hop distances <= 3.

    (u, v) must be an edge of the tree.  Removing it splits the tree into the
    side of u and the side of v; each side is traversed recursively between
    its anchor and the anchor's smallest remaining neighbor, and the two
    traversals are joined across the removed edge.  The recursion is run on
    an explicit stack so arbitrarily deep trees are fine.
    """
    if _normalize_edge(u, v) not in tree.edge_set:
        raise DomainError(f"({u}, {v}) is not an edge of the tree")
    delete, next_of = _consume_neighbors(tree)
    out: list[int] = []
    # Work item: ("path", a, b, rev) emits the component containing edge
    # (a, b), from a to b when rev is False and from b to a when rev is True.
    stack: list[tuple] = [("path", u, v, False)]
    while stack:
        item = stack.pop()
        if item[0] == "emit":
            out.append(item[1])
            continue
        _, a, b, rev = item
        delete(a, b)
        first, second = (a, b) if not rev else (b, a)
        nxt_second = next_of(second)
        if nxt_second is None:
            stack.append(("emit", second))
        else:
            stack.append(("path", second, nxt_second, True))
        nxt_first = next_of(first)
        if nxt_first is None:
            stack.append(("emit", first))
        else:
            stack.append(("path", first, nxt_first, False))
    return out


def cube_hamiltonian_path_between(tree: Tree, a: int, b: int) -> list[int]:
    """Order all nodes from a to b (any two distinct nodes), hops <= 3.

    Peels a off the tree: a's side branches are each traversed from their
    attachment point, then the construction recurses into the component
    containing b.  On a path-shaped tree with a and b as its two ends this
    returns the path itself.
    """
    if a not in tree.nodes or b not in tree.nodes:
        raise IdentifierError("both endpoints must be nodes of the tree")
    if a == b:
        raise DomainError("endpoints must be distinct")
    parent, _, _ = tree.rooted_at(a)._rooting

    out: list[int] = []
    remaining = tree
    start = a
    while True:
        if _normalize_edge(start, b) in remaining.edge_set:
            out.extend(cube_hamiltonian_path(remaining, start, b))
            return out
        # Next hop from `start` toward b inside the remaining component.
        toward = b
        while parent[toward] != start:
            toward = parent[toward]  # type: ignore[assignment]
        out.append(start)
        branch_heads = [w for w in remaining.adjacency[start] if w != toward]
        comp_of: dict[int, list[int]] = {}
        if branch_heads:
            comp_edges: dict[int, list[tuple[int, int]]] = {h: [] for h in branch_heads}
            for h in branch_heads:
                comp = [h]
                seen = {start, h}
                stack = [h]
                while stack:
                    x = stack.pop()
                    for w in remaining.adjacency[x]:
                        if w not in seen:
                            seen.add(w)
                            comp.append(w)
                            stack.append(w)
                            comp_edges[h].append((x, w))
                comp_of[h] = comp
            for h in branch_heads:
                comp = comp_of[h]
                if len(comp) == 1:
                    out.append(h)
                    continue
                branch = Tree(frozenset(comp), tuple(comp_edges[h]))
                tail = min(branch.adjacency[h])
                out.extend(cube_hamiltonian_path(branch, h, tail))
        # Recurse into the component of b.
        comp = [toward]
        seen = {start, toward}
        edges: list[tuple[int, int]] = []
        stack = [toward]
        while stack:
            x = stack.pop()
            for w in remaining.adjacency[x]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
                    edges.append((x, w))
        remaining = Tree(frozenset(comp), tuple(edges))
        start = toward


def cube_hamiltonian_cycle(tree: Tree) -> list[int]:
    """Cyclic order of all nodes with every gap (wrap included) <= 3 hops.

    Built as the cube path along the lowest-id tree edge; the wrap-around
    step is that tree edge itself.
    """
    if len(tree.nodes) < 3:
        raise DomainError("a cycle needs at least three nodes")
    u, v = min(tree.edges)
    return cube_hamiltonian_path(tree, u, v)


def tree_to_dict(tree: Tree) -> dict:
    return {
        "nodes": sorted(tree.nodes),
        "edges": [[u, v] for u, v in tree.edges],
        "root": tree.root,
    }


def tree_from_dict(doc: dict) -> Tree:
    return Tree(
        frozenset(doc["nodes"]),
        tuple((u, v) for u, v in doc["edges"]),
        root=doc.get("root"),
    )

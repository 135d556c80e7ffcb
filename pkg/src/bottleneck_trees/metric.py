"""Metric instances and the two partition annotations.

Points are the integers 0..point_count-1.  An instance is either Euclidean
(one coordinate sequence per point) or an explicit symmetric distance matrix.
Explicit matrices are expected to satisfy the metric axioms; `validate_metric`
checks them and instance documents loaded from JSON are validated eagerly.

Ties between equal distances are always broken by lexicographic (u, v) edge
order, so every algorithm in this package is deterministic for a fixed input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, IdentifierError, PartitionError


@dataclass(frozen=True)
class MetricInstance:
    """A finite metric space over points 0..point_count-1.

    Exactly one of `coordinates` (Euclidean geometry) or `matrix` (explicit
    distances) is set.  Coincident points are allowed; distances may be any
    non-negative reals.
    """

    coordinates: tuple[tuple[float, ...], ...] | None = None
    matrix: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self) -> None:
        if (self.coordinates is None) == (self.matrix is None):
            raise DomainError("exactly one of coordinates or matrix must be given")
        if self.coordinates is not None:
            coords = tuple(tuple(float(x) for x in row) for row in self.coordinates)
            if not coords:
                raise DomainError("an instance needs at least one point")
            dim = len(coords[0])
            if any(len(row) != dim for row in coords):
                raise DomainError("all coordinate sequences must have the same dimension")
            object.__setattr__(self, "coordinates", coords)
        else:
            assert self.matrix is not None
            rows = tuple(tuple(float(x) for x in row) for row in self.matrix)
            if not rows:
                raise DomainError("an instance needs at least one point")
            if any(len(row) != len(rows) for row in rows):
                raise DomainError("distance matrix must be square")
            object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_coordinates(cls, coordinates) -> "MetricInstance":
        return cls(coordinates=tuple(tuple(row) for row in coordinates))

    @classmethod
    def from_matrix(cls, matrix) -> "MetricInstance":
        return cls(matrix=tuple(tuple(row) for row in matrix))

    @property
    def point_count(self) -> int:
        if self.coordinates is not None:
            return len(self.coordinates)
        assert self.matrix is not None
        return len(self.matrix)

    def points(self) -> range:
        return range(self.point_count)

    def _check_id(self, p: int) -> None:
        if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p < self.point_count:
            raise IdentifierError(f"point id {p!r} not in 0..{self.point_count - 1}")

    def distance(self, u: int, v: int) -> float:
        """Distance between two points; symmetric and zero on the diagonal."""
        self._check_id(u)
        self._check_id(v)
        if self.matrix is not None:
            return self.matrix[u][v]
        assert self.coordinates is not None
        return math.dist(self.coordinates[u], self.coordinates[v])


@dataclass(frozen=True)
class MetricValidation:
    """Outcome of checking the metric axioms on an instance.

    Each violation is a tagged tuple: ("diagonal", u), ("negative", u, v),
    ("symmetry", u, v), or ("triangle", u, v, w) meaning
    d(u,w) > d(u,v) + d(v,w).
    """

    violations: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_metric(instance: MetricInstance) -> MetricValidation:
    """Check symmetry, zero diagonal, non-negativity, and all triangles.

    Euclidean instances satisfy the axioms by construction and pass without
    any work.  Violations are reported, never raised.
    """
    if instance.matrix is None:
        return MetricValidation(())
    m = instance.matrix
    n = len(m)
    violations: list[tuple] = []
    for u in range(n):
        if m[u][u] != 0.0:
            violations.append(("diagonal", u))
        for v in range(u + 1, n):
            if m[u][v] < 0.0 or m[v][u] < 0.0:
                violations.append(("negative", u, v))
            if m[u][v] != m[v][u]:
                violations.append(("symmetry", u, v))
    for u in range(n):
        row_u = m[u]
        for v in range(n):
            if v == u:
                continue
            duv = row_u[v]
            row_v = m[v]
            for w in range(u + 1, n):
                if w == v:
                    continue
                if row_u[w] > duv + row_v[w]:
                    violations.append(("triangle", u, v, w))
    return MetricValidation(tuple(violations))


def _check_disjoint_groups(groups, what: str) -> None:
    seen: set[int] = set()
    for group in groups:
        for p in group:
            if p in seen:
                raise PartitionError(f"point {p} appears in more than one {what}")
            seen.add(p)


@dataclass(frozen=True)
class TuplePartition:
    """A partition of the points 0..kn-1 into n groups of size exactly k."""

    k: int
    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise PartitionError("tuple size k must be at least 2")
        groups = tuple(tuple(sorted(int(p) for p in g)) for g in self.tuples)
        if not groups:
            raise PartitionError("at least one tuple is required")
        if any(len(g) != self.k for g in groups):
            raise PartitionError(f"every tuple must have exactly {self.k} points")
        _check_disjoint_groups(groups, "tuple")
        universe = {p for g in groups for p in g}
        expected = set(range(self.k * len(groups)))
        if universe != expected:
            raise PartitionError(
                f"tuples must cover exactly the points 0..{self.k * len(groups) - 1}"
            )
        object.__setattr__(self, "tuples", groups)

    @property
    def group_count(self) -> int:
        return len(self.tuples)

    @property
    def point_count(self) -> int:
        return self.k * len(self.tuples)


@dataclass(frozen=True)
class ClusterPartition:
    """Disjoint clusters of size between 1 and k over some point set."""

    k: int
    clusters: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise PartitionError("maximum cluster size k must be at least 2")
        groups = tuple(tuple(sorted(int(p) for p in g)) for g in self.clusters)
        if not groups:
            raise PartitionError("at least one cluster is required")
        if any(not 1 <= len(g) <= self.k for g in groups):
            raise PartitionError(f"every cluster must have between 1 and {self.k} points")
        _check_disjoint_groups(groups, "cluster")
        object.__setattr__(self, "clusters", groups)

    def point_ids(self) -> list[int]:
        return sorted(p for g in self.clusters for p in g)

    def max_size(self) -> int:
        return max(len(g) for g in self.clusters)

    def check_covers(self, instance: MetricInstance) -> None:
        if set(self.point_ids()) != set(instance.points()):
            raise PartitionError("clusters must cover exactly the instance's points")


@dataclass(frozen=True)
class InstanceDocument:
    """A metric instance plus whatever partition annotations travel with it."""

    instance: MetricInstance
    tuples: TuplePartition | None = None
    clusters: ClusterPartition | None = None


def parse_instance_document(doc: dict) -> InstanceDocument:
    """Build an InstanceDocument from the JSON file layout.

    Layout: {"points": {"coordinates": [[..],..]} | {"matrix": [[..],..]},
    "tuples": [[..],..]?, "clusters": [[..],..]?, "k": int?}.  Explicit
    matrices are validated eagerly; a violated axiom is a hard error here.
    """
    if not isinstance(doc, dict) or "points" not in doc:
        raise DomainError("instance document must be an object with a 'points' field")
    points = doc["points"]
    if not isinstance(points, dict):
        raise DomainError("'points' must be an object")
    if "coordinates" in points:
        instance = MetricInstance.from_coordinates(points["coordinates"])
    elif "matrix" in points:
        instance = MetricInstance.from_matrix(points["matrix"])
        report = validate_metric(instance)
        if not report.ok:
            shown = ", ".join(repr(v) for v in report.violations[:3])
            raise DomainError(f"distance matrix is not a metric: {shown}")
    else:
        raise DomainError("'points' must contain 'coordinates' or 'matrix'")

    tuples = None
    if doc.get("tuples") is not None:
        groups = doc["tuples"]
        if not groups or not all(isinstance(g, list) for g in groups):
            raise DomainError("'tuples' must be a non-empty list of lists")
        k = int(doc["k"]) if doc.get("k") is not None else len(groups[0])
        tuples = TuplePartition(k=k, tuples=tuple(tuple(g) for g in groups))
        if tuples.point_count != instance.point_count:
            raise PartitionError("tuples do not cover exactly the instance's points")
    clusters = None
    if doc.get("clusters") is not None:
        groups = doc["clusters"]
        if not groups or not all(isinstance(g, list) for g in groups):
            raise DomainError("'clusters' must be a non-empty list of lists")
        k = int(doc["k"]) if doc.get("k") is not None else max(2, max(len(g) for g in groups))
        clusters = ClusterPartition(k=max(2, k), clusters=tuple(tuple(g) for g in groups))
        clusters.check_covers(instance)
    return InstanceDocument(instance=instance, tuples=tuples, clusters=clusters)


def instance_document_to_dict(doc: InstanceDocument) -> dict:
    """Inverse of parse_instance_document, suitable for json.dumps."""
    out: dict = {}
    if doc.instance.coordinates is not None:
        out["points"] = {"coordinates": [list(row) for row in doc.instance.coordinates]}
    else:
        assert doc.instance.matrix is not None
        out["points"] = {"matrix": [list(row) for row in doc.instance.matrix]}
    if doc.tuples is not None:
        out["tuples"] = [list(g) for g in doc.tuples.tuples]
        out["k"] = doc.tuples.k
    if doc.clusters is not None:
        out["clusters"] = [list(g) for g in doc.clusters.clusters]
        out.setdefault("k", doc.clusters.k)
    return out

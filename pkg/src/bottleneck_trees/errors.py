"""Exception types shared across the package."""


class BottleneckTreeError(Exception):
    """Base class for every error raised by this package."""


class IdentifierError(BottleneckTreeError, IndexError):
    """A point or node id is outside the valid range."""


class DomainError(BottleneckTreeError, ValueError):
    """An argument is well-formed but outside an operation's domain."""


class PartitionError(BottleneckTreeError, ValueError):
    """A tuple, cluster, or bucket partition violates its invariants."""


class InfeasibleError(BottleneckTreeError, ValueError):
    """No feasible solution exists for the given combination of inputs."""


class OracleSizeError(BottleneckTreeError, ValueError):
    """An exact solver was asked to enumerate beyond its hard size cap."""


class AlgorithmInvariantError(BottleneckTreeError, RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""

from __future__ import annotations


class DistreeError(Exception):
    """Base class for library errors."""


class InvalidParameterError(DistreeError, ValueError):
    pass


class MissingEdgeError(DistreeError, KeyError):
    def __init__(self, edge):
        super().__init__(edge)
        self.edge = edge

    def __str__(self):
        return f"edge {self.edge} is not in the graph"


class GraphParseError(DistreeError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class FormatOverflowError(DistreeError, OverflowError):
    pass


class DisconnectedGraphError(DistreeError, ValueError):
    def __init__(self, u, v):
        super().__init__(f"graph is disconnected: no path between {u} and {v}")
        self.pair = (u, v)


class ConvergenceError(DistreeError, RuntimeError):
    """Power iteration hit its iteration cap; ``estimate`` holds the last interval."""

    def __init__(self, estimate):
        super().__init__(
            f"no convergence after {estimate.iterations} iterations: "
            f"[{estimate.lo!r}, {estimate.hi!r}]"
        )
        self.estimate = estimate


class ModeMismatchError(DistreeError, ValueError):
    pass


class EquitabilityError(DistreeError, AssertionError):
    pass


class CrossCheckError(DistreeError, AssertionError):
    pass


class SizeGuardError(DistreeError, ValueError):
    pass


class InvalidPartitionError(DistreeError, ValueError):
    pass


class InvalidPackingError(DistreeError, ValueError):
    pass


class UndecidedError(DistreeError, RuntimeError):
    pass


class GenerationError(DistreeError, RuntimeError):
    pass

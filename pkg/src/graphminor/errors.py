"""Exception hierarchy shared by all modules."""


class GraphMinorError(Exception):
    """Base class for every error raised by the package."""


class InvalidGraph(GraphMinorError, ValueError):
    pass


class UnknownVertex(InvalidGraph):
    pass


class DuplicateEdgeId(InvalidGraph):
    pass


class Disconnected(InvalidGraph):
    pass


class InvalidSize(GraphMinorError, ValueError):
    pass


class TooLarge(GraphMinorError):
    """A configured enumeration or computation limit would be exceeded."""


class WouldDisconnect(GraphMinorError, ValueError):
    pass


class ContractLoop(GraphMinorError, ValueError):
    pass


class Mismatch(GraphMinorError, ValueError):
    pass


class InvalidMorphism(GraphMinorError, ValueError):
    """Raised when a morphism fails validation where a valid one is required."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotMonotone(GraphMinorError, ValueError):
    def __init__(self, smaller, larger):
        self.smaller = smaller
        self.larger = larger
        super().__init__(
            f"property holds on {sorted(larger)} but fails on subset {sorted(smaller)}"
        )


class NotSubset(GraphMinorError, ValueError):
    pass


class NotFunctorial(GraphMinorError, ValueError):
    pass


class BadDegree(GraphMinorError, ValueError):
    pass


class NoFit(GraphMinorError):
    pass


class Unbalanced(GraphMinorError, ValueError):
    pass

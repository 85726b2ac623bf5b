"""Exception hierarchy.

Everything raised on purpose by the package derives from
:class:`FractureError`, so the CLI can map domain failures to exit code 1.
"""


class FractureError(Exception):
    """Base class for all domain errors."""


class ParseError(FractureError, ValueError):
    """Malformed token or section in a graph file."""


class DuplicateEdge(ParseError):
    """The same unordered pair appears twice."""


class SelfLoop(ParseError):
    """An edge joins a node to itself."""


class UnknownNode(FractureError, KeyError):
    """A node id that is not part of the graph."""

    def __str__(self):
        return Exception.__str__(self)


class ToleranceAmbiguity(FractureError, ArithmeticError):
    """An eigenvalue sits too close to the null-space threshold to classify."""


class BasisInconsistency(FractureError, ArithmeticError):
    """The sparsest-basis search ran out of columns before reaching full rank."""


class NotConnected(FractureError, ValueError):
    """A spectral cut was requested on a disconnected graph."""


class NoConvergence(FractureError, ArithmeticError):
    """An iterative eigensolver hit its iteration cap."""


class BudgetExceedsNodes(FractureError, ValueError):
    """The removal budget is not smaller than the node count."""


class CapacityExceeded(FractureError, MemoryError):
    """A dense computation was requested above the configured size limit."""

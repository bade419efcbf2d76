"""Exception hierarchy shared by every module.

Decomposition validity problems are reported as data (see
``src.decomposition.ValidationVerdict``), never raised.
"""


class TreewidthError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(TreewidthError):
    """Malformed .gr / .td / constraints input."""


class SelfLoopError(FormatError):
    """An edge joins a vertex to itself."""


class MembershipError(TreewidthError):
    """A vertex set names labels that are not vertices of the graph."""


class NotFoundError(TreewidthError):
    """No bag of a decomposition contains the requested vertex set."""


class AlignmentError(TreewidthError):
    """Per-component inputs do not line up with the fill-in result."""


class SizeLimitError(TreewidthError):
    """The exact oracle was asked to solve a graph above its vertex limit."""


class PermutationError(TreewidthError):
    """An elimination ordering is not a permutation of the vertex set."""


class BudgetExceeded(TreewidthError):
    """A recursive computation ran out of its call budget."""


class AdjacentPairError(TreewidthError):
    """A vertex cut was requested between adjacent (or identical) vertices."""


class NoSeparatorError(TreewidthError):
    """The graph has no separator (it is a clique)."""


class CspInstanceError(TreewidthError):
    """A CSP instance breaks its table/edge alignment invariants."""


class DegenerateDataError(TreewidthError):
    """Growth fitting received too few points or a zero count."""


class InvalidParameterError(TreewidthError):
    """A numeric parameter such as a search budget is out of range."""

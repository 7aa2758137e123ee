"""Exception types shared across the package."""


class CrossLatError(Exception):
    """Base class for all package errors."""


class InvalidSizeError(CrossLatError):
    """A graph or poset was requested with an unusable size."""


class InvalidEdgeError(CrossLatError):
    """An edge referenced a node outside the graph or was degenerate."""


class MembershipError(CrossLatError):
    """A node set is not an element of the lattice under consideration."""


class SizeLimitError(CrossLatError):
    """An operation would exceed a hard resource cap."""


class GradednessError(CrossLatError):
    """A rank-dependent operation was applied to an ungraded poset."""


class PreconditionError(CrossLatError):
    """An operation's stated precondition does not hold for the input."""


class UnsupportedGraphError(CrossLatError):
    """An operation only defined for certain graph shapes got another one."""


class CompositionError(CrossLatError):
    """A sequence is not a valid composition of the required degree."""


class BasisMismatchError(CrossLatError):
    """Two quasisymmetric functions live in different bases or degrees."""


class EmptyIntervalError(CrossLatError):
    """Interval endpoints are not comparable in the required direction."""

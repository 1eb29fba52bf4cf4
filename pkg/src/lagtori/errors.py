"""Exception hierarchy shared by every module."""


class LagtoriError(Exception):
    """Base class for all package errors."""


class DomainError(LagtoriError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class BoundaryError(DomainError):
    """A moment-polytope point lies on (or within tolerance of) a facet."""


class OutsideError(DomainError):
    """A moment-polytope point lies outside the polytope."""


class HypothesisError(DomainError):
    """A stated hypothesis of a closed-form result does not hold."""


class SingularityError(LagtoriError, ArithmeticError):
    """Evaluation at or too near a coordinate singularity."""


class ProbeError(LagtoriError, ValueError):
    """Base class for invalid probe data."""


class NonPrimitiveDirectionError(ProbeError):
    pass


class VertexBaseError(ProbeError):
    pass


class NotOnBoundaryError(ProbeError):
    pass


class TransversalityError(ProbeError):
    pass


class UsageError(LagtoriError):
    """Bad command-line or suite arguments."""

"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CompChoiceError(Exception):
    """Base class for all package-specific errors."""


class GroundSetMismatchError(CompChoiceError):
    """Two objects built over different ground sets were combined."""


class PowersetLimitError(CompChoiceError):
    """A powerset-sized table would exceed the configured size cap."""

    def __init__(self, needed: int, limit: int, what: str = "powerset table") -> None:
        self.needed = needed
        self.limit = limit
        self.what = what
        super().__init__(
            f"{what} needs {needed} elements, above the configured limit of "
            f"{limit}; raise the limit explicitly if this size is intended"
        )


class ContractionError(CompChoiceError):
    """A choice table assigns some menu a set that is not one of its subsets."""


class InfiniteGroundSetError(CompChoiceError):
    """A construction is only meaningful on an infinite ground set."""


class PreconditionError(CompChoiceError):
    """An operation was called on input outside its stated domain."""

    def __init__(self, message: str, witness=None) -> None:
        self.witness = witness
        super().__init__(message)


class NotComplementaryError(PreconditionError):
    """Input choice function is not both consistent and monotone."""

    def __init__(self, message: str, report=None, witness=None) -> None:
        self.report = report
        super().__init__(message, witness=witness)


class NotCompletelyComplementaryError(NotComplementaryError):
    """Input choice function fails meet preservation or full-menu choice."""


class NoUniqueMinimizerError(CompChoiceError):
    """An argmax family has no least member, so no choice can be induced."""

    def __init__(self, message: str, where=None, pair=None) -> None:
        self.where = where
        self.pair = pair
        super().__init__(message)


class JoinClosureError(CompChoiceError):
    """A fixed-element family is not join-closed or misses the bottom."""

    def __init__(self, message: str, pair=None) -> None:
        self.pair = pair
        super().__init__(message)


class NotALatticeError(CompChoiceError):
    """An order table fails to be a lattice or disagrees with its meet/join."""


class NeighborhoodPropertyError(CompChoiceError):
    """A minimal-neighborhood system violates one of its three axioms."""

    def __init__(self, prop: str, element: str, message: str) -> None:
        self.property = prop
        self.element = element
        super().__init__(message)


class LiftVerificationError(CompChoiceError):
    """An imported or rebuilt lift failed its re-verification."""


class DocumentError(CompChoiceError):
    """A document is malformed or inconsistent with its declared kind."""


class InternalInvariantError(CompChoiceError):
    """A condition the mathematics guarantees has failed; indicates a bug."""

"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class CBGError(Exception):
    """Base class for all library errors."""


class ParseError(CBGError, ValueError):
    """Malformed input text (graphs, matrices, presentations, pairings)."""


class SingularMatrixError(CBGError, ValueError):
    """A matrix that must be invertible (a change of basis) is singular."""


class GuardError(CBGError, ValueError):
    """Input exceeds a desk-scale size guard."""


class InvariantViolation(CBGError, AssertionError):
    """A proven invariant failed to hold; always a defect, never user error."""

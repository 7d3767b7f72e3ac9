"""Exception hierarchy shared by all modules."""


class CocovexError(Exception):
    """Base class for every error raised by this package."""


class CapabilityError(CocovexError):
    """A desk-scale limit (dimension, bounding box, expansion size) was exceeded."""


class ContractError(CocovexError, ValueError):
    """A precondition of an operation was violated by the caller."""


class BodyValidationError(ContractError):
    """Base class for invalid coconvex body data."""


class NonPointedConeError(BodyValidationError):
    pass


class DegenerateConeError(BodyValidationError):
    """The cone generators do not span the ambient space."""


class DeltaNotInConeError(BodyValidationError):
    pass


class UnboundedComplementError(BodyValidationError):
    pass


class OriginInDeltaError(BodyValidationError):
    pass


class BadFunctionalError(BodyValidationError):
    """The truncation functional is not positive on the cone generators."""


class ValidityError(ContractError):
    """Support numbers outside the validity region of a wedge family."""


class NongenericWeightError(CocovexError):
    """A specialization weight vector annihilates a denominator factor."""


class InfiniteSupportError(CocovexError):
    """A generating function still has a pole at t = 1 after cancellation."""


class InvariantViolation(CocovexError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ParseError(CocovexError, ValueError):
    """Malformed input file; message carries the offending field."""

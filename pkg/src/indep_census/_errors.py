"""Exception hierarchy for indep-census."""


class IndepError(Exception):
    """Base class for all errors raised by indep-census."""


class ValidationError(IndepError, ValueError):
    """An argument violates a documented precondition."""


class CapabilityError(IndepError):
    """A request exceeds what the bit-vector enumeration can represent."""


class CrossCheckError(IndepError):
    """Random-point evaluation disagrees with an exact symbolic verdict."""

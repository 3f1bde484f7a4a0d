"""Exception types raised by conjprob."""


class ConjprobError(ValueError):
    """Base class; subclasses ValueError so plain callers can catch that."""


class DomainError(ConjprobError):
    """An argument lies outside the mathematical domain of the operation."""


class SizeError(ConjprobError):
    """The requested problem exceeds a supported size limit."""


class UnsupportedCaseError(ConjprobError):
    """No special-case closed form exists for the requested parameters."""


class InhomogeneousPolynomialError(ConjprobError):
    """A volume polynomial mixes monomials of different total degree."""

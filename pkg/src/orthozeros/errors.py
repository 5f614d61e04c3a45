"""Exception hierarchy.

Domain errors (bad parameters, unsupported regimes) derive from ``DomainError``;
numerical failures derive from ``NumericalError``.  The CLI maps the two
families to distinct exit codes.
"""


class DomainError(ValueError):
    pass


class UnsupportedRegime(DomainError):
    pass


class SubUnitMass(DomainError):
    """Raised when a law with mass below one is used where a probability law is required."""


class NumericalError(ArithmeticError):
    pass


class ConvergenceError(NumericalError):
    pass


class QuadratureFailure(NumericalError):
    pass


class SingularEndpoint(NumericalError):
    pass

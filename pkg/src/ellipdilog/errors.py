class InvalidArgumentError(ValueError):
    """Input outside an operation's domain (non-finite, forbidden value, ...)."""


class NonPrincipalDivisorError(InvalidArgumentError):
    """Zero and pole sums differ by something that is not a lattice vector."""


class NumericalFailure(RuntimeError):
    """A numerical routine could not certify its result."""


class BudgetExhausted(NumericalFailure):
    """The degree reduction ran out of depth or retries."""

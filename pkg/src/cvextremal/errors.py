"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """Input lies outside the physical or mathematical domain of an operation."""


class InvalidMatrixError(DomainError):
    """Matrix is not a valid (symmetric, correctly shaped) covariance matrix."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge or violated an assumption."""


class ConfigError(ValueError):
    """Sampler or figure configuration cannot be honoured."""

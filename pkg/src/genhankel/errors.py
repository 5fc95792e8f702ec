"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AccuracyError(ArithmeticError):
    """A numerical routine cannot reach its accuracy target.

    Raised when adaptive quadrature fails to converge within its order cap,
    when a series is evaluated outside its validated region, or when a
    truncation bound cannot be certified.
    """

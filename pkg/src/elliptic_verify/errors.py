"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a function."""


class DivergenceError(ArithmeticError):
    """The requested value is infinite (e.g. K(1))."""


class NonConvergenceError(ArithmeticError):
    """A series or quadrature cannot converge for the given input."""


class QuadratureError(ArithmeticError):
    """The integrand produced a non-finite value away from a flagged endpoint."""

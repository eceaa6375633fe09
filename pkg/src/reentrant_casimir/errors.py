"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a physical formula."""


class UnsupportedModelError(TypeError):
    """A material model was passed to an operation that cannot handle it."""


class ConvergenceError(RuntimeError):
    """Matsubara summation or quadrature failed to reach its tolerance.

    The partially accumulated result is kept on ``partial`` so callers can
    still report it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(ValueError):
    """Invalid sweep configuration."""

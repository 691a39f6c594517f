"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (dimension mismatch, bad file, ...)."""


class NumericalError(ArithmeticError):
    """An iterative routine failed to converge.

    ``residual`` carries the last measured convergence quantity.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual

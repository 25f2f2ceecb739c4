"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A problem definition or solver configuration is unusable."""


class NumericError(ArithmeticError):
    """A numeric evaluation produced a non-finite or invalid value."""


class IntegrationError(RuntimeError):
    """The reference ODE integrator failed to reach the requested endpoint."""


class SolverError(RuntimeError):
    """The Galerkin solve failed (singular Jacobian, bad system, ...)."""


class NonConvergenceError(SolverError):
    """Newton hit the iteration cap.  Carries the best iterate seen."""

    def __init__(self, message, best_c=None, residual_norm=None, iterations=None):
        super().__init__(message)
        self.best_c = best_c
        self.residual_norm = residual_norm
        self.iterations = iterations

"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid input data (material constants, mesh parameters, config)."""


class MeshError(ValueError):
    """A mesh cannot be built with the requested parameters."""


class NonConvergenceError(RuntimeError):
    """An extrapolation or iterative estimate failed to settle."""


class IllConditionedError(RuntimeError):
    """A dense solve was rejected because the condition estimate is too large."""

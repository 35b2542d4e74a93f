"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """Invalid argument: bad dimensions, out-of-range parameters, malformed input."""


class NonConvergenceError(RuntimeError):
    """An iterative computation hit its hard cap before converging."""


class GenerationError(RuntimeError):
    """A chain generator could not produce an ergodic kernel."""

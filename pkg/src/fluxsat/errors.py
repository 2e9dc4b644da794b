"""Exception types shared across the toolkit."""


class ConfigurationError(ValueError):
    """Invalid run configuration or malformed input document."""


class LifetimeExceededError(ValueError):
    """A speed-limited-family profile was evaluated past its validity window."""


class HorizonExceededError(ValueError):
    """A relativistic-family profile was evaluated past its scaled horizon."""


class SynthesisError(RuntimeError):
    """Parameter synthesis could not produce an admissible profile."""


class SolverFailureError(RuntimeError):
    """The explicit solver produced a non-finite state."""


class CFLViolationError(RuntimeError):
    """Requested time step exceeds the admissible explicit step.

    Carries the largest admissible step so callers can retry.
    """

    def __init__(self, dt: float, admissible: float):
        super().__init__(
            f"time step {dt:.6e} exceeds admissible step {admissible:.6e}"
        )
        self.dt = dt
        self.admissible = admissible

"""Exception types raised across the package."""


class InvalidStateError(ValueError):
    """A state or matrix violates a density-matrix / pure-state invariant."""

    invariant = "state"

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class NotHermitianError(InvalidStateError):
    invariant = "hermiticity"


class TraceError(InvalidStateError):
    invariant = "trace"


class NegativeEigenvalueError(InvalidStateError):
    invariant = "positivity"


class DegenerateInputError(ValueError):
    """Input parameters leave the requested quantity undefined."""


class UnsupportedScheduleError(ValueError):
    """A propagator was asked to handle a schedule outside its domain."""


class IntegrationError(RuntimeError):
    """The numerical integrator failed; ``time`` is where it gave up."""

    def __init__(self, message, time):
        super().__init__(f"{message} (at t={time:.12g})")
        self.time = time


class MissingFrameError(ValueError):
    """Requested frame times are not present in the trajectory."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        listed = ", ".join(f"{t:.12g}" for t in self.missing)
        super().__init__(f"frame times not sampled in trajectory: {listed}")

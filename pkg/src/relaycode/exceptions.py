"""Exception types raised by relaycode."""


class ParameterError(ValueError):
    """An input parameter is out of range, NaN, or inconsistent.

    ``field`` names the offending parameter so front ends can report it.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class NumericalError(ArithmeticError):
    """Base class for failures of the first-passage solve."""


class NonAbsorbingError(NumericalError):
    """Some state reachable from the start never reaches the terminal state."""


class SingularSystemError(NumericalError):
    """The first-passage linear system could not be solved accurately."""

    def __init__(self, message, residual=float("nan")):
        self.residual = residual
        super().__init__(f"{message} (residual={residual:.3e})")


class SimulationTruncated(RuntimeError):
    """One or more Monte Carlo trials hit the ``max_slots`` cap."""

    def __init__(self, truncated, max_slots):
        self.truncated = truncated
        self.max_slots = max_slots
        super().__init__(f"{truncated} trial(s) exceeded max_slots={max_slots}")

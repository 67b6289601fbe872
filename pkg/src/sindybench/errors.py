"""Exception types shared across the package."""


class SindyBenchError(Exception):
    """Base class for package-specific failures."""


class ParseError(SindyBenchError, ValueError):
    """A system-definition or report file violates its schema."""


class ConfigurationError(SindyBenchError, ValueError):
    """A run or weak-form configuration is inconsistent."""


class EvaluationError(SindyBenchError, ValueError):
    """A model was evaluated at a non-finite state."""


class DivergenceError(SindyBenchError, RuntimeError):
    """Numerical integration blew up or the step size underflowed.

    Attributes
    ----------
    time : float
        Integration time at which the failure was detected.
    """

    def __init__(self, message: str, time: float):
        super().__init__(f"{message} (t={time:.6g})")
        self.time = float(time)

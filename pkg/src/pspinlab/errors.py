"""Exception types shared across the package."""


class PspinError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(PspinError):
    """An experiment configuration is malformed or inconsistent."""


class ResourceLimitError(PspinError):
    """A requested computation exceeds a hard size or budget guard."""


class ContractViolationError(PspinError):
    """An internal consistency check that should always hold has failed."""


class ConvergenceError(PspinError):
    """An iterative solver hit its step cap before reaching tolerance.

    The best estimate found so far is attached as `best` so callers can
    inspect how close the run got.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best

"""Exception types raised across the package."""


class HeisenbergError(Exception):
    pass


class InvalidRadixError(HeisenbergError, ValueError):
    pass


class IncompatibleOperandsError(HeisenbergError, ValueError):
    pass


class NotCauchyError(HeisenbergError, ValueError):
    """The supplied sequence has not stabilized modulo r^L."""


class NotCoherentError(HeisenbergError, ValueError):
    pass


class LevelError(HeisenbergError, ValueError):
    pass


class TooLargeError(HeisenbergError, ValueError):
    pass


class InvalidSubgroupError(HeisenbergError, ValueError):
    pass


class InsufficientResolutionError(HeisenbergError, ValueError):
    pass


class NonInvertibleDilationError(HeisenbergError, ZeroDivisionError):
    pass


class NoFeasiblePathError(HeisenbergError, RuntimeError):
    def __init__(self, message: str, best_penalty: float):
        super().__init__(message)
        self.best_penalty = best_penalty

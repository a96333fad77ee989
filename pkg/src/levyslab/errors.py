"""Exception types shared across the package."""


class LevySlabError(Exception):
    """Base class for all levyslab errors."""


class DomainError(LevySlabError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole of the gamma function."""


class NonConvergenceError(LevySlabError):
    """No evaluation regime reached the target accuracy.

    Carries the best available result so callers can decide whether the
    degraded accuracy is acceptable.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class GridError(LevySlabError):
    """Grid does not satisfy the FFT sampling requirements."""


class ZeroFunctionError(LevySlabError):
    """Operation undefined on identically-zero samples."""


class SelectionError(LevySlabError):
    """Boundary selection could not distinguish the degenerate pair."""


class ParityError(LevySlabError):
    """Initial data has an even component the odd sine basis cannot carry."""

    def __init__(self, message, even_fraction=None):
        super().__init__(message)
        self.even_fraction = even_fraction


class UsageError(LevySlabError):
    """Bad command line or configuration input."""

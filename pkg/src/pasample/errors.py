"""Exception types shared across the package."""


class PasampleError(Exception):
    """Base class for errors raised by this package."""


class InfeasibleWeightsError(PasampleError):
    """A strictly size-proportional design is impossible: some m*w_i/W > 1."""


class DuplicateSelectionRiskError(PasampleError):
    """Systematic selection could pick one entry twice: some weight > W/m."""


class RejectionBudgetError(PasampleError):
    """Conditional Poisson rejection loop exhausted its round budget."""

    def __init__(self, rounds: int):
        super().__init__(
            f"no round with the target sample size after {rounds} attempts"
        )
        self.rounds = rounds


class EnumerationTooLargeError(PasampleError):
    """Exact enumeration would exceed the configured budget."""


class DegenerateDesignError(PasampleError):
    """Every candidate sample has probability zero."""


class InsufficientDataError(PasampleError):
    """Not enough (or degenerate) data points for the requested statistic."""

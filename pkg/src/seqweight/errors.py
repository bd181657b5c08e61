"""Exception types shared across the package."""


class SeqWeightError(Exception):
    """Base class for all package errors."""


class GraphFormatError(SeqWeightError, ValueError):
    """Malformed graph input (edge list or graph6)."""


class InvalidGraphError(SeqWeightError, ValueError):
    """A graph violates a structural precondition (loops, niceness, ...)."""


class ListSizeError(SeqWeightError, ValueError):
    """A list assignment has the wrong size or repeated values."""


class MissingWeightError(SeqWeightError, ValueError):
    """A weighting does not cover every edge (or vertex in total mode)."""


class InvariantViolation(SeqWeightError, RuntimeError):
    """An existence guarantee failed to materialise.

    Raised when a construction whose success is guaranteed by theory finds
    no valid choice. It always signals a bug, never bad input.
    """


class InapplicableTheorem(SeqWeightError, ValueError):
    """The graph does not meet the structural hypotheses of a theorem."""


class MaxRoundsExceeded(SeqWeightError):
    """The resampler hit its round cap.

    This says nothing about infeasibility; ``rounds`` and ``violations``
    carry diagnostics for the caller.
    """

    def __init__(self, rounds, violations):
        self.rounds = rounds
        self.violations = list(violations)
        super().__init__(
            f"no valid weighting after {rounds} rounds; "
            f"{len(self.violations)} events still violated"
        )


class BudgetExceeded(SeqWeightError):
    """An exhaustive search exceeded its evaluation budget."""

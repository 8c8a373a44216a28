"""Exception hierarchy shared by the engine and the CLI."""


class EdgeIdealError(Exception):
    """Base class for all errors raised by :mod:`edgeideal`."""

    exit_code = 1


class CapacityError(EdgeIdealError):
    """Input exceeds a hard structural limit (e.g. more than 63 vertices)."""

    exit_code = 2


class BudgetError(EdgeIdealError):
    """An enumeration would exceed its configured ceiling."""

    exit_code = 2


class ParseError(EdgeIdealError):
    exit_code = 3


class PreconditionError(EdgeIdealError):
    exit_code = 4

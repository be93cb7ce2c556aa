class ReconfError(Exception):
    """Base class for every error raised by the reconfiguration services."""


class GraphParseError(ReconfError, ValueError):
    """Malformed DIMACS, colouring or sequence input."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class ArgumentError(ReconfError, ValueError):
    """A precondition of an operation does not hold."""


class SizeGuardError(ReconfError):
    """A brute-force routine was asked to enumerate too many states."""


class DegeneracyError(ReconfError):
    """The graph has no vertex of degree below d, so peeling cannot proceed."""


class InfeasibleParamsError(ReconfError):
    """No valid (d, epsilon) pair exists for the requested palette size."""


class InvariantViolation(ReconfError, AssertionError):
    """An internal guarantee was broken (indicates a bug or a forged certificate)."""

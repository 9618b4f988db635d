"""Exceptions raised by the solver library and their CLI exit codes."""

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_INVARIANT_BROKEN = 3


class GameError(Exception):
    """Root of every error raised by this package."""

    exit_code = EXIT_INVALID_INPUT


# Input errors

class ValidationError(GameError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.violations) or "invalid input")


class InstanceFormatError(GameError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class UnknownColorError(GameError):
    pass


class ColorMismatchError(GameError):
    pass


class ParameterError(GameError):
    pass


class InstanceTooLargeError(GameError):
    pass


class NotOwnedError(GameError):
    pass


class NotAPathError(GameError):
    pass


class ArenaMismatchError(GameError):
    pass


class PlayerMismatchError(GameError):
    pass


# Internal invariant errors

class InvariantError(GameError):
    exit_code = EXIT_INVARIANT_BROKEN


class WeightOverflowError(InvariantError):
    pass


class IterationBoundError(InvariantError):
    pass


class BoundViolationError(InvariantError):
    pass


class NoOptimalSuccessorError(InvariantError):
    pass

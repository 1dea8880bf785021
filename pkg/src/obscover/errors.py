class ObscoverError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ObscoverError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RejectedD(ObscoverError):
    pass


class InvalidInstance(ObscoverError):
    pass


class NotKConnected(ObscoverError):
    pass


class NotACut(ObscoverError):
    pass


class NotAnObstruction(ObscoverError):
    pass


class InvalidHost(ObscoverError):
    pass


class NotExtendable(ObscoverError):
    pass


class NoSolution(ObscoverError):
    pass


class IsolatedNode(ObscoverError):
    pass


class UncoverableNode(ObscoverError):
    pass


class NotFourRegular(ObscoverError):
    pass


class DegreeTooHigh(ObscoverError):
    pass


class Infeasible(ObscoverError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(ObscoverError):
    pass


class FlavorMismatch(ObscoverError):
    pass


class NotSatisfying(ObscoverError):
    pass


class WrongSize(ObscoverError):
    pass


class SizeExceeded(ObscoverError):
    pass


class RepairError(ObscoverError):
    """A repair step found no move that keeps the bookkeeping invariants."""

"""Exception hierarchy shared by every module."""


class CensusError(Exception):
    """Base class for all errors raised by the toolkit."""


class MalformedSpec(CensusError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvalidAction(CensusError):
    pass


class OrderCapExceeded(CensusError):
    pass


class IndexOutOfRange(CensusError):
    pass


class LatticeCapExceeded(CensusError):
    pass


class PrimeDoesNotDivideOrder(CensusError):
    pass


class ParamOutOfRange(CensusError):
    pass


class DivisorNotDividing(CensusError):
    pass


class InfeasibleScenario(CensusError):
    pass


class UnboundedSearch(CensusError):
    pass


class UnknownTableId(CensusError):
    pass


class NoValidAction(CensusError):
    pass

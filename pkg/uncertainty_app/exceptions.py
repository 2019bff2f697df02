class UncertaintyError(Exception):
    """Base class of every error raised by the pipeline."""


class ShapeMismatchError(UncertaintyError, ValueError):
    pass


class NonFiniteError(UncertaintyError, ArithmeticError):
    pass


class ProtocolError(UncertaintyError):
    """A caller broke a stage contract, e.g. passed an unfrozen classifier to stage 2."""


class InfeasibleDataError(UncertaintyError, ValueError):
    pass


class NoRelevantItemsError(UncertaintyError, ValueError):
    pass


class DataFormatError(UncertaintyError, ValueError):
    def __init__(self, message, path=None, line=None):
        super().__init__(message)
        self.path = path
        self.line = line

class ToricError(ValueError):
    """Base class for every error raised on bad input or broken contracts"""


class DimensionMismatchError(ToricError):
    """A vector length differs from the rank of the fan"""


class InvalidFanError(ToricError):
    """Fan data is malformed or its cones overlap badly"""


class UnsupportedFanError(ToricError):
    """Fan is well-formed but outside what we compute with"""


class FanFormatError(ToricError):
    """Fan file could not be parsed"""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ContractError(ToricError):
    """Precondition of an operation was violated"""


class DegreeScanError(ToricError):
    """Degree enumeration refused to run (box too large)"""

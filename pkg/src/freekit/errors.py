"""Exception types shared across the package."""


class FreekitError(Exception):
    """Base class for every error raised on purpose by freekit."""


class DimensionMismatch(FreekitError):
    pass


class NotMonic(FreekitError):
    pass


class NotIrreducible(FreekitError):
    pass


class EqualInputs(FreekitError):
    pass


class ArityMismatch(FreekitError):
    pass


class DuplicateElements(FreekitError):
    pass


class IndexOutOfRange(FreekitError):
    pass


class NotInvertible(FreekitError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"element {index} is not invertible")


class PatternMismatch(FreekitError):
    pass


class TrivialYes(FreekitError):
    """Raised when sigma(a) == tau(a): the instance is trivially positive."""

    def __init__(self, letter):
        self.letter = letter
        super().__init__(f"sigma({letter}) == tau({letter})")


class NotClausShaped(FreekitError):
    pass


class WrongCardinality(FreekitError):
    pass


class DecodeError(FreekitError):
    pass


class ParseError(FreekitError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", column {col}"
            where += ": "
        super().__init__(where + message)


class SingletonWarning(UserWarning):
    pass

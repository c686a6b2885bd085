"""Exception hierarchy shared by every module."""


class IwasawaError(ValueError):
    """Base class for all domain errors raised by the library."""


class PrimeMismatch(IwasawaError):
    pass


class NotAUnit(IwasawaError):
    pass


class InsufficientPrecision(IwasawaError):
    pass


class TruncationTooShort(IwasawaError):
    pass


class DimensionMismatch(IwasawaError):
    pass


class NotTorsion(IwasawaError):
    pass


class MuNonzero(IwasawaError):
    pass


class TrivialCharacter(IwasawaError):
    pass


class NotFinite(IwasawaError):
    pass


class LevelMismatch(IwasawaError):
    pass


class LevelZero(IwasawaError):
    pass


class SizeLimit(IwasawaError):
    pass


class DegreeMismatch(IwasawaError):
    pass


class HypothesisViolated(IwasawaError):
    pass


class UnknownPrime(IwasawaError):
    pass


class ParseError(IwasawaError):
    """Malformed input document.

    ``line``/``column`` locate JSON syntax errors; ``path`` names the
    offending field for structural errors.
    """

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)

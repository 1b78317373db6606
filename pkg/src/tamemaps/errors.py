"""Exception hierarchy.  Domain errors map to CLI exit status 1."""


class TameMapsError(Exception):
    """Base class for all library errors."""


class FieldError(TameMapsError, ValueError):
    pass


class CharacteristicMismatch(TameMapsError):
    pass


class ZeroPolynomial(TameMapsError, ValueError):
    pass


class NotASquare(TameMapsError):
    pass


class PrecisionExhausted(TameMapsError):
    pass


class NotSeparating(TameMapsError):
    pass


class DegenerateGamma(TameMapsError):
    pass


class NotPseudotame(TameMapsError):
    pass


class SearchExhausted(TameMapsError):
    pass


class OddIndexRequired(TameMapsError):
    pass


class OddCharacteristicOnly(TameMapsError):
    pass


class DimensionTooSmall(TameMapsError):
    pass


class CurveError(TameMapsError, ValueError):
    pass


class UsageError(Exception):
    """Malformed command line or literal; exit status 2."""

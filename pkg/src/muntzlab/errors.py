__all__ = (
    "AccuracyError",
    "BlockTooLargeError",
    "DegenerateFitError",
    "DegenerateInputError",
    "DomainError",
    "DuplicateExponentError",
    "InputError",
    "MembershipError",
    "MuntzLabError",
    "NotIncreasingError",
    "PreconditionError",
    "RatioCollapseError",
    "SpectrumError",
    "TruncationError",
    "UnsupportedMeasureError",
)


class MuntzLabError(Exception):
    """
    Base class for all muntzlab exceptions.
    """

    def __init__(self, message: str, /) -> None:
        self.message = message
        self.args = (message,)


class DomainError(MuntzLabError, ValueError):
    """
    A parameter was outside the domain of the operation.
    """


class SpectrumError(DomainError):
    """
    Base class for exponent sequences that fail validation.

    ``constraint`` names the violated condition and ``index`` the position
    (exponent or block index) where it was detected.
    """

    def __init__(self, constraint: str, index: int, message: str, /) -> None:
        self.constraint = constraint
        self.index = index
        self.message = message
        self.args = (constraint, index, message)


class NotIncreasingError(SpectrumError):
    """
    Exponents are not strictly increasing, or not positive.
    """

    def __init__(self, index: int, message: str, /) -> None:
        super().__init__("not-increasing", index, message)


class RatioCollapseError(SpectrumError):
    """
    Consecutive blocks are too close together for a lacunary ratio to exist.
    """

    def __init__(self, index: int, message: str, /) -> None:
        super().__init__("ratio-collapse", index, message)


class BlockTooLargeError(SpectrumError):
    """
    A block holds more exponents than the permitted block cap.
    """

    def __init__(self, index: int, message: str, /) -> None:
        super().__init__("block-too-large", index, message)


class DuplicateExponentError(SpectrumError):
    """
    Two generated exponents coincide.
    """

    def __init__(self, index: int, message: str, /) -> None:
        super().__init__("duplicate-exponent", index, message)


class MembershipError(DomainError):
    """
    A polynomial uses an exponent that is not part of the spectrum.
    """

    def __init__(self, exponent: float, message: str, /) -> None:
        self.exponent = exponent
        self.message = message
        self.args = (exponent, message)


class DegenerateInputError(DomainError):
    """
    The input carries no information, e.g. the zero polynomial.
    """


class DegenerateFitError(DegenerateInputError):
    """
    A fit was requested on data that is identically zero.
    """


class PreconditionError(DomainError):
    """
    A documented precondition of a check does not hold for the input.
    """

    def __init__(self, condition: str, message: str, /) -> None:
        self.condition = condition
        self.message = message
        self.args = (condition, message)


class AccuracyError(MuntzLabError, ArithmeticError):
    """
    The requested tolerance was not reached.

    ``estimate`` is the best value obtained and ``error_bound`` the error
    estimate that exceeded the tolerance.
    """

    def __init__(self, estimate: float, error_bound: float, message: str, /) -> None:
        self.estimate = estimate
        self.error_bound = error_bound
        self.message = message
        self.args = (estimate, error_bound, message)


class TruncationError(AccuracyError):
    """
    A finite spectrum is too short for the asymptotic regime being tested.
    """


class UnsupportedMeasureError(MuntzLabError, TypeError):
    """
    The measure variant does not support the requested operation.
    """


class InputError(MuntzLabError):
    """
    An input file could not be parsed; ``field`` names the offending entry.
    """

    def __init__(self, field: str, message: str, /) -> None:
        self.field = field
        self.message = message
        self.args = (field, message)

    def __str__(self) -> str:
        return f"{self.field}: {self.message}" if self.field else self.message


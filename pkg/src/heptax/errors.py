"""Exception hierarchy shared by the solvers and the command line."""

SINGULAR_MESSAGE = "The matrix H_h is singular"


class HeptaxError(Exception):
    """Base class for every error raised by this package."""


class ModeMismatch(HeptaxError, TypeError):
    """Scalars of incompatible arithmetic modes were combined."""


class DivisionByZero(HeptaxError, ZeroDivisionError):
    pass


class DegreeOverflow(HeptaxError, ArithmeticError):
    """A rational function in t exceeded the configured degree ceiling."""


class PoleAtZero(HeptaxError, ArithmeticError):
    """A rational function in t has no finite value at t = 0."""


class BreakdownInFloatMode(HeptaxError, ArithmeticError):
    """A zero pivot was met while running in float64 mode.

    The symbolic mode recovers from this; rerun with ``mode="symbolic"``.
    """

    def __init__(self, index, message=None):
        self.index = index
        if message is None:
            message = (
                f"zero pivot alpha_{index} in float64 mode; "
                "rerun with --mode symbolic"
            )
        super().__init__(message)


class ValidationError(HeptaxError, ValueError):
    pass


class BadBandLength(ValidationError):
    pass


class OrderTooSmall(ValidationError):
    pass


class UnsupportedCornerEntry(ValidationError):
    """A cyclic band slot outside the bordered structure holds a nonzero."""


class ParseError(ValidationError):
    pass


class GenerationFailed(HeptaxError):
    pass


class SingularMatrix(HeptaxError, ArithmeticError):
    def __init__(self, message=SINGULAR_MESSAGE):
        super().__init__(message)


class SingularCapacitance(SingularMatrix):
    """The 2x2 capacitance matrix of the Woodbury correction is singular."""


class SingularCornerBlock(HeptaxError, ArithmeticError):
    """The trailing 2x2 block is singular, so the bordered splitting does not apply."""

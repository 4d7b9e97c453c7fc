"""Exception hierarchy shared by the parsers and the pipeline."""


class TwistSpinError(Exception):
    """Base class for every error raised by this package."""


class NotationError(TwistSpinError, ValueError):
    """A knot notation could not be turned into a diagram."""


class MalformedSyntax(NotationError):
    pass


class ArityError(NotationError):
    pass


class LabelError(NotationError):
    pass


class MultiComponent(NotationError):
    pass


class LetterOutOfRange(NotationError):
    pass


class FractionError(NotationError):
    pass


class NotCoprime(FractionError):
    pass


class EvenP(FractionError):
    pass


class OutOfRange(FractionError):
    pass


class ParityMismatch(TwistSpinError, ValueError):
    """Twist relators in a presentation do not match the requested n."""


class BudgetExceeded(TwistSpinError):
    """Tietze simplification ran out of budget.

    ``partial`` carries the best presentation reached so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial

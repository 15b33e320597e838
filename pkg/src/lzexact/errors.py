"""Exception types raised across the package."""


class LZError(Exception):
    """Base class for all errors raised by lzexact."""


class InvalidParameter(LZError, ValueError):
    pass


class DegeneratePoint(LZError, ValueError):
    """The parameter point sits on the diabolic point r = 0."""


class TimeOutOfRange(LZError, ValueError):
    pass


class SolverMismatch(LZError, ValueError):
    """An operation was asked to handle a path variant it does not cover."""


class PoleOfGamma(LZError, ValueError):
    pass


class OutOfDomain(LZError, ValueError):
    pass


class NoConvergence(LZError, ArithmeticError):
    """A special-function evaluation could not reach the requested accuracy."""


class StepSizeUnderflow(LZError, ArithmeticError):
    pass


class ToleranceNotMet(LZError, ArithmeticError):
    pass


class GridMismatch(LZError, ValueError):
    pass

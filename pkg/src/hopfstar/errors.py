"""Exception hierarchy shared by every module of the package."""


class HopfStarError(Exception):
    """Base class for all errors raised by hopfstar."""


class DimensionMismatch(HopfStarError):
    pass


class AlgebraMismatch(HopfStarError):
    pass


class NotReal(HopfStarError):
    """A sign was requested for a scalar that is not fixed by conjugation."""


class PrecisionExhausted(HopfStarError):
    """Interval refinement hit its round cap without separating from zero."""


class NotInvertible(HopfStarError):
    pass


class NotInner(HopfStarError):
    """The supplied element does not implement S^2 as an inner automorphism."""


class NotModuleMap(HopfStarError):
    pass


class NotAntimodule(HopfStarError):
    pass


class NotSubmodule(HopfStarError):
    pass


class NotStarClosed(HopfStarError):
    pass


class NotStarMap(HopfStarError):
    pass


class NotInnerProduct(HopfStarError):
    pass


class Inconsistent(HopfStarError):
    pass


class NoInverse(HopfStarError):
    pass


class InversePairFails(HopfStarError):
    pass


class NotApplicable(HopfStarError):
    pass


class UnknownFixture(HopfStarError):
    pass


class ParseError(HopfStarError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ReferenceError(HopfStarError):  # noqa: A001 - name fixed by the file-format contract
    """A file refers to an object name that cannot be resolved."""


class CheckFailed(HopfStarError):
    def __init__(self, report):
        super().__init__(f"checks failed: {', '.join(report.failed_names())}")
        self.report = report

"""Exception hierarchy. Verdicts are reports, never exceptions."""


class Niep3Error(Exception):
    """Base class for every error raised by the solver."""


class NonFinite(Niep3Error, ValueError):
    pass


class NotConjugateClosed(Niep3Error, ValueError):
    pass


class ClassSpectrumMismatch(Niep3Error):
    """No closed-form result covers this (class, spectrum kind) combination."""


class OutOfRange(Niep3Error, ValueError):
    pass


class NegativeRadicand(Niep3Error, ArithmeticError):
    """A square-root argument is negative beyond tolerance; points at a range bug."""


class OutsideRegion(Niep3Error, ValueError):
    pass


class DegenerateDenominator(Niep3Error, ArithmeticError):
    pass


class InfeasibleInput(Niep3Error):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NegativeEntry(Niep3Error, ArithmeticError):
    pass


class NonPositiveScale(Niep3Error, ValueError):
    pass


class EmptyRange(Niep3Error):
    pass


class InvalidArgument(Niep3Error, ValueError):
    pass


class ConfigError(Niep3Error, RuntimeError):
    pass

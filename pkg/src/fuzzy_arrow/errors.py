"""Exception hierarchy shared by every module of the package."""


class FuzzyArrowError(Exception):
    """Base class for all errors raised by fuzzy_arrow."""


class DegreeError(FuzzyArrowError, ValueError):
    """A value is not a valid degree in [0, 1]."""


class UnknownOperatorError(FuzzyArrowError, KeyError):
    """A t-norm, t-conorm, strict operator or rule id is not registered."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown operator"


class UnknownAlternativeError(FuzzyArrowError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown alternative"


class NotLinearError(FuzzyArrowError, ValueError):
    """A relation required to be T-linear failed one of the component checks.

    ``verdict`` holds the failing :class:`~fuzzy_arrow.relations.Verdict`.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class GridNotClosedError(FuzzyArrowError, ValueError):
    """The degree grid is not closed under the requested t-norm."""


class BudgetExceededError(FuzzyArrowError, RuntimeError):
    """An exhaustive scan would exceed the configured profile budget."""


class StructureError(FuzzyArrowError, ValueError):
    """A coalition family violates a required filter/ultrafilter axiom."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class FormatError(FuzzyArrowError, ValueError):
    """A JSON document does not follow the expected schema."""

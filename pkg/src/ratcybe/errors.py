"""Exception hierarchy.  ``InputError`` maps to CLI exit code 2."""


class CybeError(Exception):
    """Base class for all package errors."""


class InputError(CybeError, ValueError):
    """Malformed or inconsistent input data."""


class DimensionMismatch(InputError):
    pass


class FormDegenerateError(CybeError, ValueError):
    """A bilinear form required to be nondegenerate is singular."""

    def __init__(self, msg="form degenerate"):
        super().__init__(msg)


class NotALieBialgebra(CybeError, ValueError):
    def __init__(self, msg="not a Lie bialgebra", report=None):
        super().__init__(msg)
        self.report = report


class PoleDoesNotCancel(CybeError, ValueError):
    def __init__(self, element, msg=None):
        super().__init__(msg or f"pole does not cancel (offending element {element})")
        self.element = element


class PoleEvaluation(CybeError, ValueError):
    def __init__(self, msg="pole evaluation: spectral parameters must be pairwise distinct"):
        super().__init__(msg)


class ConstructionRefused(CybeError):
    """A constructor's preconditions failed; ``report`` carries the failing checks."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class InternalConsistencyError(CybeError, AssertionError):
    """A postcondition that should hold by construction did not."""


class BudgetExceeded(CybeError):
    pass

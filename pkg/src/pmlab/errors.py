"""Exception hierarchy shared by all pmlab modules."""


class PmlabError(Exception):
    """Base class for every error raised by pmlab."""


class InvalidDegreeError(PmlabError, ValueError):
    pass


class InvalidArgumentError(PmlabError, ValueError):
    pass


class EmptySetError(PmlabError, ValueError):
    pass


class GammaParseError(InvalidArgumentError):
    def __init__(self, token, message=None):
        self.token = token
        super().__init__(message or f"cannot parse composition token {token!r}")


class InvalidConfigurationError(PmlabError, ValueError):
    pass


class ShapeError(PmlabError, ValueError):
    pass


class SymmetryError(PmlabError, ValueError):
    pass


class SingularMatrixError(PmlabError, ArithmeticError):
    pass


class ShiftCollisionError(PmlabError, ArithmeticError):
    """A zero pivot was met while counting inertia; the shift must be perturbed."""

    def __init__(self, shift, step):
        self.shift = shift
        self.step = step
        super().__init__(f"zero pivot at elimination step {step} for shift {shift}")


class NoConvergenceError(PmlabError, RuntimeError):
    pass


class EnumerationBudgetError(PmlabError, RuntimeError):
    def __init__(self, required, allowed):
        self.required = required
        self.allowed = allowed
        super().__init__(
            f"enumeration needs {required} subsets, budget allows {allowed}; "
            "rerun with the large budget"
        )


class OutOfRangeError(PmlabError, ValueError):
    pass

"""Exception types shared across the package."""


class HellylatError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(HellylatError):
    """Arithmetic or comparison between incompatible quadratic fields."""


class DimensionMismatchError(HellylatError):
    """Points or vectors of inconsistent dimension."""


class ScalarParseError(HellylatError):
    """A scalar string did not match the serialization grammar."""


class PreconditionError(HellylatError):
    """An operation was called outside its documented preconditions."""


class LowerDimensionalHullError(HellylatError):
    """Hull input was not full-dimensional.

    Carries the dimension of the affine hull so callers can decide how to
    project.
    """

    def __init__(self, affine_dim: int, ambient_dim: int):
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim
        super().__init__(
            f"input spans a {affine_dim}-dimensional flat in R^{ambient_dim}; "
            "full-dimensional input required"
        )


class WindowBudgetError(HellylatError):
    """A window enumeration would exceed the configured point budget."""


class InvariantViolationError(HellylatError):
    """An internal invariant asserted at runtime failed.

    Raised e.g. when the hollow-to-empty swap fails to make progress; the
    message carries enough state to reproduce the failure.
    """

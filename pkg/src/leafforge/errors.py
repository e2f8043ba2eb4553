"""Exception hierarchy shared by the solver modules and the CLI."""


class LeafforgeError(Exception):
    """Base class for every error raised by leafforge."""


class DimensionMismatch(LeafforgeError, ValueError):
    pass


class NonUnimodularForm(LeafforgeError, ValueError):
    """The Gram matrix is not symmetric or its determinant is not +-1."""


class NotCharacteristic(LeafforgeError, ValueError):
    pass


class Unsupported(LeafforgeError):
    """A hypothesis of the underlying criterion fails; the tool refuses to guess.

    ``hypothesis`` names the violated condition so the CLI can echo it.
    """

    def __init__(self, message: str, hypothesis: str = ""):
        super().__init__(message)
        self.hypothesis = hypothesis or message


class NoIntegerCompletion(LeafforgeError, ValueError):
    pass


class InvariantViolation(LeafforgeError, AssertionError):
    """An internal invariant failed; reaching this indicates a bug."""


class SpecError(LeafforgeError, ValueError):
    """A manifold document or report could not be parsed."""

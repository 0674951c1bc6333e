"""Exception hierarchy.

The CLI maps these onto exit codes: :class:`MalformedInput` and its
subclasses exit with 3, :class:`HypothesisError` and its subclasses with 4.
"""


class MMError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(MMError, ValueError):
    """A structure or argument does not satisfy its basic shape constraints."""


class HypothesisError(MMError):
    """An operation was applied outside the hypotheses it is defined under."""


class MissingAssignment(MMError, KeyError):
    pass


class DivisionByZero(MMError, ZeroDivisionError):
    pass


class UnknownElement(MalformedInput):
    pass


class NotASubtransversal(MalformedInput):
    pass


class NotNearTransversal(MalformedInput):
    pass


class NotTight(HypothesisError):
    pass


class UnorderedClass(HypothesisError):
    pass


class SingularClass(HypothesisError):
    pass


class SizeMismatch(HypothesisError):
    pass


class NotQMatroid(HypothesisError):
    pass


class NotVfSafe(HypothesisError):
    pass


class SingularElement(HypothesisError):
    pass


class ModeHypothesisViolated(HypothesisError):
    pass


class UnknownEdge(MalformedInput):
    pass


class MalformedPresentation(MalformedInput):
    pass


class MissingDistinguishedArrow(HypothesisError):
    pass

"""Exception hierarchy shared by all strandlab modules."""


class StrandlabError(Exception):
    """Base class for every error raised by the library."""


class PreconditionError(StrandlabError):
    """An operation was called on input violating its precondition."""


class NotPure(PreconditionError):
    pass


class WrongCardinality(PreconditionError):
    pass


class OutOfRange(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class InvalidShape(PreconditionError):
    pass


class NotComposable(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class NotAComplex(PreconditionError):
    pass


class NonHomogeneous(PreconditionError):
    pass


class NotMinimal(PreconditionError):
    pass


class LabelMismatch(PreconditionError):
    pass


class InputError(StrandlabError):
    """Malformed external input (JSON files, CLI values)."""

"""Exception hierarchy shared by every module."""


class NoSigError(Exception):
    """Base class for all errors raised by this package."""


class LinalgError(NoSigError, ValueError):
    pass


class NotSquare(LinalgError):
    pass


class NotHermitian(LinalgError):
    pass


class NotConverged(LinalgError):
    pass


class StateError(NoSigError, ValueError):
    pass


class NotNormalized(StateError):
    pass


class NotAQubit(StateError):
    pass


class OutOfRange(StateError):
    pass


class NotOrthonormal(StateError):
    pass


class BadSubsystemIndex(StateError):
    pass


class DimMismatch(StateError):
    pass


class EmptyEnsemble(StateError):
    pass


class InvalidDensityMatrix(StateError):
    pass


class BadConfig(NoSigError, ValueError):
    """Invalid machine, scenario, or sweep configuration."""


class BadSpec(BadConfig):
    pass


class UnmatchedTerm(NoSigError, KeyError):
    """A state handed to a machine has no rewrite rule."""

    def __str__(self):
        return Exception.__str__(self)


class NoClosedForm(NoSigError, LookupError):
    pass

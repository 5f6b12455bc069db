"""Exception hierarchy shared by every comtrace module."""


class ComtraceError(ValueError):
    """Base class for all errors raised by this package."""


class DuplicateAction(ComtraceError):
    pass


class ReflexivePair(ComtraceError):
    pass


class SerNotInSim(ComtraceError):
    pass


class UnknownAction(ComtraceError):
    pass


class CapExceeded(ComtraceError):
    pass


class ParseError(ComtraceError):
    """Malformed text input.  ``position`` is a 0-based offset or line number."""

    def __init__(self, reason, position=None):
        self.reason = reason
        self.position = position
        where = "" if position is None else f" at {position}"
        super().__init__(f"parse error{where}: {reason}")


class NotAStep(ComtraceError):
    pass


class AlphabetMismatch(ComtraceError):
    pass


class IndependentPair(ComtraceError):
    pass


class BottomOnNonSsmPair(ComtraceError):
    pass


class NotIndivisible(ComtraceError):
    pass


class AlreadyIndivisible(ComtraceError):
    pass


class EmptyPossibleSet(ComtraceError):
    pass


class NotAllowedStep(ComtraceError):
    pass


class NotRealizable(ComtraceError):
    """The projection set is not the representation of any comtrace.

    ``stage`` is the number of steps extracted before the procedure got stuck
    and ``remaining`` the surviving non-empty entries at that point.
    """

    def __init__(self, message, stage=None, remaining=None):
        self.stage = stage
        self.remaining = remaining
        super().__init__(message)


class MalformedProjectionSet(NotRealizable):
    pass


class NotRadical(ComtraceError):
    pass


class UnknownNode(ComtraceError):
    pass


class StepNotEnabled(ComtraceError):
    pass

"""Exception hierarchy shared by all modules."""


class AutomatonError(Exception):
    """Base class for every error raised by idealsync."""


class AutFormatError(AutomatonError, ValueError):
    """Malformed ``.aut`` input.  ``lineno`` is 1-based, or None."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class AlphabetMismatch(AutomatonError, ValueError):
    pass


class PreconditionError(AutomatonError, ValueError):
    pass


class BudgetExceeded(AutomatonError, RuntimeError):
    """A configured cap (subsets, semigroup size, enumeration) was hit."""


class TheoremViolation(AutomatonError, AssertionError):
    """A search whose success is guaranteed by a theorem came back empty.

    Carries a dump of the instance so the event can be reproduced.
    """

    def __init__(self, message, instance=None):
        self.instance = instance
        if instance is not None:
            message = f"{message}\n--- instance ---\n{instance}"
        super().__init__(message)

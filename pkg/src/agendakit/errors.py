"""Exception hierarchy shared by all agendakit modules."""


class AgendaKitError(Exception):
    """Base class for every error raised by agendakit."""


class InvalidAgenda(AgendaKitError, ValueError):
    """An agenda (or one of its issues) violates a structural invariant."""


class NonContingentIssue(InvalidAgenda):
    """An issue is empty or equal to the whole universe."""


class NotComplementClosed(InvalidAgenda):
    """An agenda lacks the complement of one of its issues."""


class EmptyAgenda(InvalidAgenda):
    pass


class IssueNotInAgenda(InvalidAgenda, KeyError):
    pass


class NotASubset(AgendaKitError, ValueError):
    pass


class InvalidProfile(AgendaKitError, ValueError):
    """A mass function or profile is malformed."""


class SizeMismatch(InvalidProfile):
    pass


class LimitExceeded(AgendaKitError):
    """An exhaustive computation would exceed its configured cap."""


class NotSystematic(AgendaKitError):
    """Two profiles realize the same probability vector with different outputs.

    ``first`` and ``second`` are ``(profile, issue_index)`` pairs.
    """

    def __init__(self, message, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second


class FormulaSyntaxError(AgendaKitError, SyntaxError):
    """Malformed formula text; ``position`` is the 0-based character offset."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at offset {position}")
        self.text = text
        self.position = position


class UnknownAtom(InvalidAgenda):
    pass


class TooManyAtoms(InvalidAgenda):
    pass

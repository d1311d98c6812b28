"""Exception hierarchy shared by every module of the package."""


class DescsError(Exception):
    """Base class for all errors raised by descs."""


class AlphabetMismatch(DescsError):
    """Two automata that must share an alphabet do not."""


class AlphabetConflict(DescsError):
    """An event is uncontrollable in one alphabet and controllable in another."""


class InitialStateRemoved(DescsError):
    """A subautomaton was requested whose state set omits the initial state."""


class StateLimitExceeded(DescsError):
    def __init__(self, limit):
        super().__init__(f"state limit of {limit} exceeded")
        self.limit = limit


class NondeterministicSpec(DescsError):
    """A deterministic automaton was required but a choice was found."""

    def __init__(self, state, event):
        super().__init__(
            f"nondeterministic choice at state {state!s} on event {event!r}")
        self.state = state
        self.event = event


class NotControllable(DescsError):
    """Raised by supervisor synthesis when the existence check fails."""

    def __init__(self, report):
        super().__init__("specification is not synchronously "
                         "simulation-based controllable")
        self.report = report


class BudgetExceeded(DescsError):
    """A brute-force oracle was asked to explore more than it may."""


class Cancelled(DescsError):
    """A long-running computation observed a cancellation request."""


class ParseError(DescsError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path

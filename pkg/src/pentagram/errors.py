"""Exception hierarchy shared by every module."""


class PentagramError(Exception):
    """Base class for all library errors."""


class SingularState(PentagramError):
    """A map is undefined at the given state (a denominator vanishes)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class UnstableRange(PentagramError):
    """The bracket formulas are only available for n >= 2k - 1."""


class ExactDivisionFailure(PentagramError):
    """A polynomial division that must be exact left a remainder."""


class DegeneratePolygon(PentagramError):
    """A polygon violates the genericity needed by a construction."""


class DegenerateQuadruple(PentagramError):
    """A cross-ratio denominator vanishes."""


class SingularConfiguration(PentagramError):
    """A leapfrog configuration makes the local rule undefined."""


class BranchUnavailable(PentagramError):
    """The requested plane-reconstruction branch does not exist."""


class ToleranceExceeded(PentagramError):
    """A floating-point construction lost too much accuracy."""


class StateFormatError(PentagramError):
    """Malformed state JSON."""

class SpinorLabError(Exception):
    """Base class for every error raised by spinorlab."""


class PreconditionError(SpinorLabError, ValueError):
    """Input is well-formed but violates an operation's precondition (wrong length, non-unit, ...)."""


class UnsupportedError(SpinorLabError):
    """Operation is not defined for these dimensions (e.g. chirality for odd n)."""


class InconsistencyError(SpinorLabError):
    """A numerical identity that should hold failed to reach tolerance."""


class DimensionCapError(SpinorLabError):
    """Requested representation exceeds the configured coefficient cap."""

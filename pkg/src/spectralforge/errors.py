"""Exception types shared across the package."""


class SpectralForgeError(Exception):
    """Base class for package errors."""


class InputError(SpectralForgeError):
    """Invalid user-supplied data (bad file, bad parameter, dimension mismatch)."""


class CapacityError(SpectralForgeError):
    """A requested computation exceeds a configured size cap."""


class NotIsospectralError(InputError):
    """Two operators fail the isospectrality precondition.

    Carries the matching report produced by the comparison.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report

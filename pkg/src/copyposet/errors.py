"""Exception types shared across the library."""


class CopyPosetError(Exception):
    """Base class for all library errors."""


class UnknownStructureError(CopyPosetError):
    """Raised when a structure id is not registered."""


class PreconditionError(CopyPosetError):
    """An operation was called outside its contract."""


class UnsupportedConstructionError(CopyPosetError):
    """The requested construction provably does not exist for this group action
    (e.g. a proper copy of a single-copy structure), or the structure cannot
    certify the preconditions the construction needs."""


class ImpossibleConstructionError(CopyPosetError):
    """The requested construction contradicts a certificate (e.g. avoiding a
    point that lies in the ranked closure of the fixed set)."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class SearchBudgetError(CopyPosetError):
    """A witness search exhausted its candidate-scan budget.

    Carries the blocking obligation so the failure is replayable."""

    def __init__(self, message, blocking=None, scanned=0):
        super().__init__(message)
        self.blocking = blocking
        self.scanned = scanned


class InclusionContractError(CopyPosetError):
    """A certified-inclusion assumption was violated by observed memberships."""

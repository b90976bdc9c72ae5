"""Exception types raised by srgseg."""


class SrgError(Exception):
    """Base class for all library errors."""


class ParameterError(SrgError, ValueError):
    """An argument is outside its valid domain (even window, k out of range, ...)."""


class PgmError(SrgError, ValueError):
    """Malformed Netpbm data.  ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class PgmHeaderError(PgmError):
    pass


class PgmMaxvalError(PgmError):
    pass


class PgmTruncatedError(PgmError):
    pass


class LabelOverflowError(SrgError, ValueError):
    pass


class PipelineError(SrgError):
    """The segmentation pipeline cannot produce a result for this input."""


class DegenerateHistogramError(PipelineError):
    pass


class NoRoisError(PipelineError):
    pass


class NoCandidatesError(PipelineError):
    pass


class RejectedSeedError(PipelineError):
    def __init__(self, seed_id: int, reason: str):
        super().__init__(f"seed {seed_id} rejected: {reason}")
        self.seed_id = seed_id


class PlacementError(SrgError):
    """Synthetic cell placement did not converge."""

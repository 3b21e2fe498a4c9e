"""Exception types shared across the engine and the service layer."""


class NFTDiskError(Exception):
    """Base class for all errors raised by this package."""

    code = "Error"


class IngestError(NFTDiskError):
    code = "IngestError"


class MalformedRow(IngestError):
    """A row/object in the input could not be turned into a transaction."""

    code = "MalformedRow"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class BadAddress(MalformedRow):
    """Address is not 0x followed by 40 hex characters."""

    code = "BadAddress"


class NegativeValue(MalformedRow):
    code = "NegativeValue"


class EmptyInput(IngestError):
    code = "EmptyInput"


class OutOfRange(NFTDiskError):
    """A timestamp or radius falls outside the configured extent."""

    code = "OutOfRange"


class EmptyBrush(NFTDiskError):
    """A brush selection contains no addresses or no time span."""

    code = "EmptyBrush"


class GroupEmpty(NFTDiskError):
    code = "GroupEmpty"


class DataDirMissing(NFTDiskError):
    code = "DataDirMissing"


class UnknownCollection(NFTDiskError):
    code = "UnknownCollection"


class FetchError(NFTDiskError):
    code = "FetchError"


class AuthFailed(FetchError):
    code = "AuthFailed"


class RateLimited(FetchError):
    """Explorer asked us to back off; ``retry_after`` is in seconds."""

    code = "RateLimited"

    def __init__(self, message: str, retry_after: float | None = None):
        super().__init__(message)
        self.retry_after = retry_after


class PartialFetch(FetchError):
    """Fetch aborted mid-way; cursor was persisted so a re-run resumes."""

    code = "PartialFetch"

    def __init__(self, message: str, pages_done: int, rows_written: int):
        super().__init__(message)
        self.pages_done = pages_done
        self.rows_written = rows_written

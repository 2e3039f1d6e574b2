"""Exception hierarchy shared by all citenv modules.

The CLI maps these onto exit codes (user error = 1) and the HTTP service
onto status codes (404 / 422); anything else is an internal error.
"""


class CitenvError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(CitenvError):
    """Invalid input data encountered while building a dataset."""


class UnknownJournalError(CitenvError):
    """A journal id that does not resolve within the loaded dataset."""

    def __init__(self, journal_id: str):
        super().__init__(f"unknown journal id: {journal_id!r}")
        self.journal_id = journal_id


class EmptyDirectionError(CitenvError):
    """The seed has no citation total in the requested direction."""


class EmptyMatrixError(CitenvError):
    """An operation that needs a nonzero grandsum got an all-zero matrix."""


class FormatError(CitenvError):
    """Malformed graph interchange text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

"""Exception types shared across the package."""


class OptsegError(Exception):
    """Base class for all package errors."""


class RankFileError(OptsegError):
    """Rank file cannot be parsed or violates integrity constraints."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownTokenIdError(OptsegError, LookupError):
    """A token id is not present in the vocabulary."""


class PretokenizeError(OptsegError):
    """Input document cannot be pre-tokenized (e.g. invalid UTF-8 in reject mode)."""


class UnsegmentableError(OptsegError):
    """No segmentation of the chunk into vocabulary tokens exists.

    `offset` is the first byte position that no segmentable prefix can be
    extended past (0-based, relative to the chunk).
    """

    def __init__(self, offset: int):
        super().__init__(f"chunk is not segmentable past byte offset {offset}")
        self.offset = offset


class UndefinedMetricError(OptsegError):
    """Metric is undefined for the given inputs (e.g. zero baseline tokens)."""


class InternalConsistencyError(OptsegError):
    """An internal invariant was violated (broken backpointer chain etc.)."""

"""Toolkit error type carrying a stable, machine-readable code.

Every contract violation raised by this package is a :class:`PunckitError`
whose ``code`` attribute is one of a small closed set of identifiers, so
callers (including the CLI) can branch on the failure kind without parsing
message text.
"""

from __future__ import annotations

#: Closed set of error codes raised by the library.
ERROR_CODES = frozenset(
    {
        "ALREADY_PUNCTUATED",  # restore() called on text that still has marks
        "EMPTY_INPUT",  # labeling requested for a blank sentence
        "INDEX",  # feature extraction at an out-of-range position
        "MANIFEST",  # corpus manifest missing/invalid
        "NO_DATA",  # training requested with an empty sample set
        "NO_MARKS",  # percentage breakdown of an all-zero count table
        "NO_SAMPLES",  # evaluation requested with an empty pair set
        "PAIR_MISMATCH",  # gold/prediction files have different line counts
        "SAMPLE_TOO_LARGE",  # sample size exceeds the available pool
        "SHAPE",  # parallel sequences have mismatched lengths
        "SOURCE",  # a corpus source file is unreadable or malformed
        "SPLIT_SIZES",  # split sizes non-positive or exceed the pool
    }
)


class PunckitError(Exception):
    """Raised for any contract violation inside the toolkit.

    Parameters
    ----------
    code : str
        One of :data:`ERROR_CODES`.
    message : str
        Human-readable description of what went wrong.
    """

    def __init__(self, code: str, message: str) -> None:
        if code not in ERROR_CODES:
            raise ValueError(f"unknown error code: {code!r}")
        super().__init__(message)
        self.code = code
        self.message = message

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"

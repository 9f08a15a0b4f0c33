"""Exception types shared across the package."""


class CollgramError(Exception):
    """Base class for all errors raised by this package."""


class DataFormatError(CollgramError):
    """A file or record does not match its documented format.

    Carries the offending path and 1-based line number when known, so
    callers can report the exact location of the problem.
    """

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None and line is not None:
            prefix = f"{path}:{line}: "
        elif path is not None:
            prefix = f"{path}: "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(prefix + message)


class IndexVersionError(DataFormatError):
    """An index or model file declares a version this code cannot read."""


class ProviderError(CollgramError):
    """A sentiment provider failed to produce a score."""

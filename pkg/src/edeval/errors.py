"""Exception types shared across the toolkit.

Everything that indicates broken *input data* derives from ``DataError``
so the CLI can map it to a single exit code (1).  Usage errors (bad flag
combinations, unknown names) are raised as ``ValueError`` / argparse
errors and map to exit code 2.
"""


class DataError(Exception):
    """Input data cannot be used (malformed file, shape mismatch, ...)."""


class ParseError(DataError):
    """A file violates its format; carries a position for the message."""

    def __init__(self, message: str, *, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}: "
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)


class AnnotationError(DataError):
    """Lemma/POS annotation required but missing."""


class ShapeError(DataError):
    """Documents that must be parallel have different segment counts."""

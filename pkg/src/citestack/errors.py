"""Exception types shared across the package."""


class DataError(Exception):
    """Base for all input-data problems (CLI maps these to exit code 2)."""


class ParseError(DataError):
    """A record could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class IngestError(DataError):
    """A parsed record violates a corpus-level constraint."""


class GenerationError(DataError):
    """The synthetic benchmark generator could not satisfy its config."""

class NativenessError(Exception):
    """Base class for errors raised by this package."""


class IngestionError(NativenessError, ValueError):
    """Input text could not be turned into a usable lexicon or label set."""

    def __init__(self, message, line=None, byte_offset=None):
        self.line = line
        self.byte_offset = byte_offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if byte_offset is not None:
            where.append(f"byte offset {byte_offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ModelError(NativenessError, ValueError):
    """A model cannot be built or applied to the given data."""


class EvaluationError(NativenessError, ValueError):
    """Labels or scores are unusable for the requested metric."""

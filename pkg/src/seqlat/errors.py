"""Exception hierarchy shared by every seqlat module."""

from __future__ import annotations


class SeqlatError(Exception):
    """Base class for all errors raised by seqlat."""


class InputError(SeqlatError, ValueError):
    """Bad data handed to an operation (unknown node, schema mismatch, ...)."""


class ConfigError(SeqlatError, ValueError):
    """Inconsistent projection spec or run configuration."""


class ParseError(InputError):
    """A file could not be parsed. Carries the location of the failure."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = str(path)
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class ConceptLimitError(SeqlatError):
    """Lattice construction exceeded the configured maximum concept count."""

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(
            f"concept limit of {limit} exceeded; use a stricter projection "
            f"or raise max_concepts"
        )

"""Exception types shared across the package."""


class ArchgraphError(Exception):
    """Base class for all errors raised by this package."""


class ModelError(ArchgraphError):
    """A mutation or build request violates the model contract."""


class UnknownEntityError(ModelError):
    """A referenced component, relation type, layer, or node does not exist."""


class ParameterError(ArchgraphError):
    """A numeric parameter is outside its valid range."""


class ConvergenceError(ArchgraphError):
    """An iterative solver hit its iteration cap before reaching tolerance."""

    def __init__(self, message: str, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class DegenerateSpectrumError(ArchgraphError):
    """The dominant eigenspace is not unique, so a result would be arbitrary."""


class ParseError(ArchgraphError):
    """A model document failed to parse."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class RevisionConflictError(ArchgraphError):
    """A mutation carried a revision that is no longer current."""

    def __init__(self, expected: int, current: int):
        super().__init__(f"stale revision {expected}, store is at revision {current}")
        self.expected = expected
        self.current = current

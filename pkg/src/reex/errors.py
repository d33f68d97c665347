"""Exception types shared across the package."""


class ReexError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ReexError):
    """Malformed input text. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CycleError(ReexError):
    """The relation graph contains a cycle. ``cycle`` lists one offending path."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " -> ".join(self.cycle)
        super().__init__(f"relation graph is cyclic: {path}")


class UnknownTermError(ReexError, KeyError):
    """A term identifier is not present in the ontology."""

    def __init__(self, term_id):
        super().__init__(f"unknown term: {term_id!r}")
        self.term_id = term_id


class SchemaError(ReexError):
    """An interchange document violates the expected schema.

    ``path`` names the offending location, e.g. ``instances[3].values``.
    """

    def __init__(self, message, path):
        super().__init__(f"{path}: {message}")
        self.path = path


class ConvergenceError(ReexError):
    """A reasoning pass limit was exceeded before reaching a fixed point."""

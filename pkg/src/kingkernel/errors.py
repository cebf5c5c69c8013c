"""Exception types shared across the package.

The CLI maps these onto process exit codes: PreconditionError (and
GenerationError) exit 1, FormatError exits 2, TheoremViolation exits 3.
"""

from __future__ import annotations

from typing import Any


class PreconditionError(ValueError):
    """An operation was called on input outside its contract."""


class FormatError(ValueError):
    """A digraph or composition file could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GenerationError(RuntimeError):
    """Rejection sampling exhausted its retry cap without a valid instance."""


class TheoremViolation(AssertionError):
    """A verified theorem failed on a concrete instance.

    This should never fire; if it does, `instance` holds a JSON-serializable
    description of the offending input so it can be written to disk and
    reported.
    """

    def __init__(self, message: str, instance: Any = None):
        self.instance = instance
        super().__init__(message)

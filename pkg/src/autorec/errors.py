"""Error types shared across the package.

Every failure that a caller can provoke with bad input derives from
AutorecError, so command line code can map them to a single exit code.
"""

from __future__ import annotations


class AutorecError(ValueError):
    """Base class for domain errors raised by this package."""

    code = "domain"


class ParseError(AutorecError):
    """Automaton file rejected; carries the offending position."""

    code = "parse"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(f"{message}{where}")


class BudgetError(AutorecError):
    """A configured work budget was exhausted before the computation ended."""

    code = "budget"

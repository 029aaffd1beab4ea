"""Exception hierarchy shared by the core package and its surfaces."""

from __future__ import annotations

from typing import Optional


class LinkHomotopyError(Exception):
    """Base class for every error raised by the package."""

    kind = "error"


class InputError(LinkHomotopyError, ValueError):
    """Malformed or out-of-range input (components, sequences, generators)."""

    kind = "input"


class AmbientMismatchError(InputError):
    """Two operands live over different component decompositions."""

    kind = "ambient"


class DomainError(LinkHomotopyError, ArithmeticError):
    """An algebraic precondition does not hold."""

    kind = "domain"


class ParseError(InputError):
    """A document could not be parsed; carries a 1-based line and column."""

    kind = "parse"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"

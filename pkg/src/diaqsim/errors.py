"""Exception types shared across the library.

The CLI maps these onto stable exit codes: ParseError -> 2,
UnsupportedFeatureError / UnsupportedGateError -> 3, ResourceError -> 4.
"""
from __future__ import annotations


class DiaqError(Exception):
    """Base class for all diaqsim errors."""


class ShapeError(DiaqError, ValueError):
    """Operand dimensions do not fit the requested operation."""


class UnsupportedGateError(DiaqError, ValueError):
    """Gate name outside the built-in catalog."""


class UnsupportedFeatureError(DiaqError, ValueError):
    """Input uses a construct outside the supported subset."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class ParseError(DiaqError, ValueError):
    """Lexical or syntactic error; carries source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class ResourceError(DiaqError, RuntimeError):
    """A size guard tripped before allocating something enormous."""


class NormalizationError(DiaqError, ValueError):
    """State norm drifted too far from 1 to sample from."""

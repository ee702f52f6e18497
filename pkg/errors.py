"""
Errors Module

This module defines the exception hierarchy shared by the codecosets
library and command-line interface. Every error can render itself as a
machine-readable error object for the JSON output.
"""

from typing import Any, Dict


class CodeCosetsError(ValueError):
    """Base class for every domain error raised by codecosets."""

    def to_dict(self) -> Dict[str, Any]:
        """
        Render the error as a JSON-ready error object.

        Returns:
            Dict of the form {"error": {"type": ..., "message": ...}}
        """
        return {"error": {"type": type(self).__name__, "message": str(self)}}


class ParseError(CodeCosetsError):
    """Malformed code-definition file or literal."""


class CapExceededError(CodeCosetsError):
    """An enumeration or table would exceed its configured cap."""


class CharacteristicError(CodeCosetsError):
    """A binary-only operation was asked of a non-binary code."""


class DimensionError(CodeCosetsError):
    """Length, arity or parameter mismatch, or a rank-deficient matrix."""


class FieldMismatchError(CodeCosetsError):
    """Operands belong to different finite fields."""


class UsageError(ParseError):
    """Unknown subcommand, missing argument or malformed flag value."""

"""
Utility Module

This module provides utility functions for codecosets: parsers for the
command-line literals (received vectors, integer lists) and the JSON
writer shared by every subcommand.
"""

import json
import logging
import re
from pathlib import Path
from typing import Any, List, Optional, Union

from errors import DimensionError, ParseError
from field import FieldSpec
from linear_code import VectorFq

logger = logging.getLogger(__name__)

SEPARATORS = re.compile(r"[\s,]+")


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma or whitespace separated list of integers.

    Args:
        text: The literal, e.g. "1,0,1" or "[1 3 2]"

    Returns:
        The integers in order
    """
    if not text or not isinstance(text, str):
        raise ParseError("Empty integer list")

    body = text.strip().strip("[]()")
    parts = [part for part in SEPARATORS.split(body) if part]
    if not parts:
        raise ParseError(f"Empty integer list: {text!r}")

    try:
        return [int(part) for part in parts]
    except ValueError as e:
        raise ParseError(f"Malformed integer list {text!r}: {e}") from e


def parse_vector(text: str, spec: FieldSpec, n: Optional[int] = None) -> VectorFq:
    """
    Parse a received-vector literal.

    Prime fields take residues ("1,0,1,1"). Extension fields take one
    coefficient group per position, groups separated by ';' and
    coefficients by ',' ("0,1;1,1;0,0").

    Args:
        text: The literal
        spec: Field of the entries
        n: Expected length, unchecked when None

    Returns:
        The vector
    """
    if not text or not text.strip():
        raise ParseError("Empty vector literal")

    body = text.strip().strip("[]()")
    if spec.m == 1:
        entries = [_residue(spec, x) for x in parse_int_list(body)]
    else:
        entries = []
        for group in body.split(";"):
            coeffs = parse_int_list(group)
            if len(coeffs) != spec.m:
                raise ParseError(f"Entries over {spec} need {spec.m} coefficients, got {group!r}")
            if any(not 0 <= c < spec.p for c in coeffs):
                raise ParseError(f"Coefficients must lie in [0, {spec.p - 1}]: {group!r}")
            entries.append(spec.index_of(coeffs))

    if n is not None and len(entries) != n:
        raise DimensionError(f"Vector {text!r} has {len(entries)} entries, code length is {n}")
    return VectorFq(spec, tuple(entries))


def _residue(spec: FieldSpec, x: int) -> int:
    if not 0 <= x < spec.p:
        raise ParseError(f"Entry {x} is not a residue mod {spec.p}")
    return x


def to_json(document: Any) -> str:
    """Stable JSON text: insertion-ordered keys, two-space indent, trailing newline."""
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def write_json(document: Any, output: Optional[Union[str, Path]] = None) -> str:
    """
    Render a document and write it to a file when a path is given.

    Args:
        document: JSON-ready document
        output: Destination path, or None to only render

    Returns:
        The rendered text
    """
    text = to_json(document)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")
    return text

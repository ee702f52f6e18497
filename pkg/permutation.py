"""
Permutation Module

This module provides permutations of the positions 1..n, written either in
cycle notation "(1,10,2,7,9,6,4,3,5)" or in list notation
"[1,3,4,9,10,8,7,5,2,6]" (the image of 1, then of 2, ...).
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, TypeVar

from errors import DimensionError, ParseError

logger = logging.getLogger(__name__)

T = TypeVar("T")

CYCLE_PATTERN = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection of 1..n; images[i - 1] is the image of i."""

    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ParseError(f"Not a permutation of 1..{len(self.images)}: {list(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """
        Build a permutation from disjoint cycles.

        Args:
            cycles: Cycles such as (1, 10, 2), each mapping an entry to the next
            n: Number of points

        Returns:
            The permutation
        """
        images = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= n:
                    raise ParseError(f"Cycle entry {point} outside 1..{n}")
                if point in seen:
                    raise ParseError(f"Point {point} appears in more than one cycle")
                seen.add(point)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """
        Parse cycle or list notation.

        Args:
            text: "(1,10,2)(3,4)", "()", "[2,1,3]" or "2,1,3"
            n: Number of points

        Returns:
            The permutation
        """
        text = text.strip()
        if not text:
            raise ParseError("Empty permutation literal")

        if text.startswith("("):
            leftover = CYCLE_PATTERN.sub("", text).strip()
            if leftover:
                raise ParseError(f"Malformed cycle notation: {text!r}")
            cycles = []
            for body in CYCLE_PATTERN.findall(text):
                if body.strip():
                    cycles.append(_parse_ints(body, text))
            return cls.from_cycles(cycles, n)

        body = text[1:-1] if text.startswith("[") and text.endswith("]") else text
        images = _parse_ints(body, text)
        if len(images) != n:
            raise DimensionError(f"List notation needs {n} images, got {len(images)}")
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inverse = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            inverse[image - 1] = i
        return Permutation(tuple(inverse))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: i -> self(other(i))."""
        if other.n != self.n:
            raise DimensionError(f"Cannot compose permutations of {self.n} and {other.n} points")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    @property
    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, start=1))

    def apply_to_sequence(self, items: Sequence[T]) -> Tuple[T, ...]:
        """Move the item at position i to position sigma(i)."""
        if len(items) != self.n:
            raise DimensionError(f"Permutation of {self.n} points applied to {len(items)} items")
        moved: List[T] = [None] * self.n  # type: ignore[list-item]
        for i, item in enumerate(items):
            moved[self.images[i] - 1] = item
        return tuple(moved)

    def cycles(self) -> List[Tuple[int, ...]]:
        """Disjoint cycles of length at least 2, each starting at its least point."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            out.append(tuple(cycle))
        return out

    def to_list(self) -> List[int]:
        return list(self.images)

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(x) for x in cycle) + ")" for cycle in cycles)

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.images) + "]"


def _parse_ints(body: str, text: str) -> List[int]:
    try:
        return [int(part) for part in body.split(",") if part.strip()]
    except ValueError as e:
        raise ParseError(f"Malformed permutation literal: {text!r}") from e

"""
Finite Field Module

This module implements exact arithmetic in GF(p^m). Elements are written in
the power basis a_0 + a_1*a + ... + a_{m-1}*a^{m-1} of a root a of a fixed
monic irreducible polynomial, and are addressed internally by the integer
index a_0 + a_1*p + ... + a_{m-1}*p^{m-1}. That index is the integer
representation of the galois field class, which builds the dense numpy
addition and multiplication tables once per field.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple, Type

import galois
import numpy as np

from errors import DimensionError, FieldMismatchError, ParseError

logger = logging.getLogger(__name__)

MAX_FIELD_SIZE = 256

# Coefficients from the constant term up; the trailing 1 is the leading term.
DEFAULT_IRREDUCIBLES = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
}


def is_prime(p: int) -> bool:
    return p >= 2 and galois.is_prime(p)


def _as_poly(poly: Sequence[int], p: int) -> galois.Poly:
    """galois wants coefficients from the leading term down."""
    return galois.Poly(list(reversed(poly)), field=galois.GF(p))


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """
    Check a monic polynomial for irreducibility over F_p.

    Args:
        poly: Coefficients from the constant term up, monic
        p: Prime modulus

    Returns:
        True if poly has no factor of positive degree below its own
    """
    if len(poly) < 2:
        return False
    return _as_poly(poly, p).is_irreducible()


def find_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree m."""
    poly = galois.irreducible_poly(p, m, method="min")
    return tuple(int(c) for c in reversed(poly.coeffs))


def default_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """
    Default defining polynomial for GF(p^m).

    Args:
        p: Prime modulus
        m: Extension degree

    Returns:
        Coefficients of the polynomial, constant term first
    """
    if m == 1:
        return (0, 1)
    if (p, m) in DEFAULT_IRREDUCIBLES:
        return DEFAULT_IRREDUCIBLES[(p, m)]
    return find_irreducible(p, m)


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) together with its defining polynomial."""

    p: int
    m: int = 1
    irreducible: Optional[Tuple[int, ...]] = field(default=None)
    irreducible_given: bool = field(default=False, init=False, compare=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ParseError(f"Field characteristic must be prime, got {self.p}")
        if self.m < 1:
            raise ParseError(f"Extension degree must be at least 1, got {self.m}")
        if self.p ** self.m > MAX_FIELD_SIZE:
            raise DimensionError(
                f"GF({self.p}^{self.m}) exceeds the supported size {MAX_FIELD_SIZE}"
            )

        object.__setattr__(self, "irreducible_given", self.irreducible is not None)
        if self.irreducible is None:
            object.__setattr__(self, "irreducible", default_irreducible(self.p, self.m))
        else:
            object.__setattr__(self, "irreducible", tuple(int(c) for c in self.irreducible))

        poly = self.irreducible
        if len(poly) != self.m + 1:
            raise ParseError(
                f"Defining polynomial needs {self.m + 1} coefficients, got {len(poly)}"
            )
        if any(not 0 <= c < self.p for c in poly):
            raise ParseError(f"Coefficients must lie in [0, {self.p - 1}]: {list(poly)}")
        if poly[-1] != 1:
            raise ParseError(f"Defining polynomial must be monic: {list(poly)}")
        if self.m > 1 and not is_irreducible(poly, self.p):
            raise ParseError(f"Polynomial {list(poly)} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    @cached_property
    def powers(self) -> np.ndarray:
        """Place values p^j used to index coefficient vectors."""
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def coeff_table(self) -> np.ndarray:
        """q x m array with the power-basis coefficients of every index."""
        indices = np.arange(self.q, dtype=np.int64)
        return (indices[:, None] // self.powers[None, :]) % self.p

    @cached_property
    def galois_field(self) -> Type[galois.FieldArray]:
        """The galois field class with this defining polynomial."""
        if self.m == 1:
            return galois.GF(self.p)
        return galois.GF(self.q, irreducible_poly=_as_poly(self.irreducible, self.p))

    @cached_property
    def _grid(self) -> Tuple[galois.FieldArray, galois.FieldArray]:
        x = self.galois_field(np.arange(self.q))
        return x[:, None], x[None, :]

    @cached_property
    def add_table(self) -> np.ndarray:
        a, b = self._grid
        return (a + b).view(np.ndarray).astype(np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return (-self.galois_field(np.arange(self.q))).view(np.ndarray).astype(np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def mul_table(self) -> np.ndarray:
        logger.debug(f"Building multiplication table for {self}")
        a, b = self._grid
        return (a * b).view(np.ndarray).astype(np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is left at 0."""
        table = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        table[rows] = cols
        return table

    @cached_property
    def _lists(self) -> Tuple[list, list, list, list]:
        return (
            self.add_table.tolist(),
            self.mul_table.tolist(),
            self.neg_table.tolist(),
            self.inv_table.tolist(),
        )

    def add(self, a: int, b: int) -> int:
        return self._lists[0][a][b]

    def sub(self, a: int, b: int) -> int:
        return self._lists[0][a][self._lists[2][b]]

    def mul(self, a: int, b: int) -> int:
        return self._lists[1][a][b]

    def neg(self, a: int) -> int:
        return self._lists[2][a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Zero has no inverse")
        return self._lists[3][a]

    def scalar(self, c: int) -> int:
        """Index of the prime-field element c mod p."""
        return c % self.p

    def index_of(self, coeffs: Sequence[int]) -> int:
        """
        Index of the element with the given power-basis coefficients.

        Args:
            coeffs: Length-m list of residues, coefficient of a^j at j

        Returns:
            The element index
        """
        if len(coeffs) != self.m:
            raise DimensionError(f"Expected {self.m} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < self.p for c in coeffs):
            raise ParseError(f"Coefficients must lie in [0, {self.p - 1}]: {list(coeffs)}")
        return sum(int(c) * self.p ** j for j, c in enumerate(coeffs))

    def coeffs_of(self, index: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.coeff_table[index])

    def format_index(self, index: int) -> str:
        """Render an element index as a polynomial in a, e.g. '1+a'."""
        terms = []
        for j, c in enumerate(self.coeffs_of(index)):
            if not c:
                continue
            power = "" if j == 0 else ("a" if j == 1 else f"a^{j}")
            if j == 0:
                terms.append(str(c))
            else:
                terms.append(power if c == 1 else f"{c}{power}")
        return "+".join(terms) if terms else "0"

    def __str__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^m) by its power-basis coefficients."""

    spec: FieldSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.spec.m:
            raise DimensionError(
                f"Element of {self.spec} needs {self.spec.m} coefficients, got {len(self.coeffs)}"
            )
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise ParseError(f"Coefficients must lie in [0, {self.spec.p - 1}]: {self.coeffs}")

    @classmethod
    def from_index(cls, spec: FieldSpec, index: int) -> "FieldElement":
        return cls(spec, spec.coeffs_of(index))

    @property
    def index(self) -> int:
        return self.spec.index_of(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"Expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"Cannot combine elements of {self.spec} and {other.spec}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement.from_index(self.spec, self.spec.add(self.index, other.index))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement.from_index(self.spec, self.spec.sub(self.index, other.index))

    def __neg__(self) -> "FieldElement":
        return FieldElement.from_index(self.spec, self.spec.neg(self.index))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement.from_index(self.spec, self.spec.mul(self.index, other.index))

    def inverse(self) -> "FieldElement":
        return FieldElement.from_index(self.spec, self.spec.inv(self.index))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __str__(self) -> str:
        return self.spec.format_index(self.index)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def scalar_embed(spec: FieldSpec, c: int) -> FieldElement:
    """
    Embed a residue of the prime field into GF(p^m).

    Args:
        spec: Target field
        c: Residue in [0, p-1]

    Returns:
        The element with coefficients (c, 0, ..., 0)
    """
    if not 0 <= c < spec.p:
        raise ParseError(f"Residue must lie in [0, {spec.p - 1}], got {c}")
    return FieldElement(spec, (c,) + (0,) * (spec.m - 1))

"""
Monomial Module

This module implements words of the free commutative monoid on the nm
variables x_1..x_{nm} of a code over GF(p^m), where variable x_{(i-1)m+j}
stands for the coefficient of a^{j-1} at position i. It provides the maps
psi (word to vector) and xi (word to syndrome), standard words, the action
of position permutations on words, the admissible orders lex and drl, and
the error-vector order that compares |Ind| first.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Tuple

from errors import DimensionError, ParseError
from linear_code import Code, Syndrome, VectorFq, syndrome
from permutation import Permutation

logger = logging.getLogger(__name__)

MAX_EXPONENT = 255
ORDER_KINDS = ("lex", "drl")

FACTOR_PATTERN = re.compile(r"^x(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class VariableIndex:
    """Variable x_{ij}: position i in 1..n, sublevel j in 1..m."""

    i: int
    j: int
    m: int = 1

    def __post_init__(self):
        if self.i < 1 or not 1 <= self.j <= self.m:
            raise DimensionError(f"Invalid variable index ({self.i}, {self.j}) with m={self.m}")

    @property
    def flat(self) -> int:
        return (self.i - 1) * self.m + self.j

    @classmethod
    def from_flat(cls, flat: int, m: int = 1) -> "VariableIndex":
        if flat < 1:
            raise DimensionError(f"Variable index must be positive, got {flat}")
        return cls(i=(flat - 1) // m + 1, j=(flat - 1) % m + 1, m=m)


@dataclass(frozen=True)
class Word:
    """
    A word of the monoid, stored as its raw exponent vector.

    Exponents are not reduced mod p; the coset walk's worklist carries
    non-standard words such as x9^2.
    """

    exponents: Tuple[int, ...]
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if self.m < 1 or len(self.exponents) % self.m:
            raise DimensionError(
                f"{len(self.exponents)} variables do not split into blocks of {self.m}"
            )
        if any(e < 0 or e > MAX_EXPONENT for e in self.exponents):
            raise ParseError(f"Exponents must lie in [0, {MAX_EXPONENT}]: {self.exponents}")

    @classmethod
    def one(cls, nvars: int, m: int = 1) -> "Word":
        return cls((0,) * nvars, m)

    @classmethod
    def variable(cls, flat: int, nvars: int, m: int = 1) -> "Word":
        """The word x_flat (1-based)."""
        if not 1 <= flat <= nvars:
            raise DimensionError(f"Variable x{flat} outside x1..x{nvars}")
        exponents = [0] * nvars
        exponents[flat - 1] = 1
        return cls(tuple(exponents), m)

    @classmethod
    def parse(cls, text: str, nvars: int, m: int = 1) -> "Word":
        """
        Parse the multiplicative form, e.g. 'x3*x7^2' or '1'.

        Args:
            text: Word literal
            nvars: Number of variables n*m
            m: Variables per position

        Returns:
            The word
        """
        body = text.strip()
        if not body:
            raise ParseError("Empty word literal")
        exponents = [0] * nvars
        if body == "1":
            return cls(tuple(exponents), m)

        for factor in body.split("*"):
            match = FACTOR_PATTERN.match(factor.strip())
            if not match:
                raise ParseError(f"Malformed factor {factor!r} in word {text!r}")
            flat = int(match.group(1))
            power = int(match.group(2)) if match.group(2) else 1
            if not 1 <= flat <= nvars:
                raise ParseError(f"Variable x{flat} outside x1..x{nvars} in {text!r}")
            # Repeated factors accumulate, x1*x1 is x1^2
            exponents[flat - 1] += power
        return cls(tuple(exponents), m)

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_one(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def support(self) -> Tuple[int, ...]:
        """0-based indices of the variables dividing the word."""
        return tuple(v for v, e in enumerate(self.exponents) if e)

    @cached_property
    def mask(self) -> int:
        """Bitmask of the support."""
        out = 0
        for v in self.support:
            out |= 1 << v
        return out

    def times(self, var: int) -> "Word":
        """The word times x_{var+1} (0-based var)."""
        exponents = list(self.exponents)
        exponents[var] += 1
        return Word(tuple(exponents), self.m)

    def over(self, var: int) -> "Word":
        """The word divided by x_{var+1}; the variable must divide it."""
        exponents = list(self.exponents)
        exponents[var] -= 1
        return Word(tuple(exponents), self.m)

    def divides(self, other: "Word") -> bool:
        if self.mask & ~other.mask:
            return False
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(tuple(a + b for a, b in zip(self.exponents, other.exponents)), self.m)

    def quotient(self, divisor: "Word") -> "Word":
        self._check(divisor)
        if not divisor.divides(self):
            raise DimensionError(f"{divisor} does not divide {self}")
        return Word(tuple(a - b for a, b in zip(self.exponents, divisor.exponents)), self.m)

    def _check(self, other: "Word") -> None:
        if other.nvars != self.nvars or other.m != self.m:
            raise DimensionError(f"Words over different variable sets: {self} and {other}")

    def __str__(self) -> str:
        factors = []
        for v, e in enumerate(self.exponents):
            if e == 1:
                factors.append(f"x{v + 1}")
            elif e > 1:
                factors.append(f"x{v + 1}^{e}")
        return "*".join(factors) if factors else "1"


def ind(w: Word) -> FrozenSet[int]:
    """1-based positions i with some x_{ij} dividing w."""
    return frozenset(v // w.m + 1 for v in w.support)


def level(w: Word) -> int:
    return len(ind(w))


def is_standard(w: Word, p: int) -> bool:
    return all(e < p for e in w.exponents)


def standard_form(w: Word, p: int) -> Word:
    """Exponents reduced mod p; same psi image."""
    return Word(tuple(e % p for e in w.exponents), w.m)


def _check_arity(code: Code, w: Word) -> None:
    if w.nvars != code.nvars or w.m != code.spec.m:
        raise DimensionError(
            f"Word over {w.nvars} variables used with a code over {code.nvars} variables"
        )


def psi(code: Code, w: Word) -> VectorFq:
    """
    Image of a word in F_q^n.

    Position i gets the element whose a^{j-1} coefficient is the exponent
    of x_{ij} reduced mod p.

    Args:
        code: The code fixing n, p and m
        w: The word

    Returns:
        The vector psi(w)
    """
    _check_arity(code, w)
    spec = code.spec
    p, m = spec.p, spec.m
    entries = []
    for i in range(code.n):
        # Exponents are read mod p, so x^p acts as 1
        block = w.exponents[i * m:(i + 1) * m]
        entries.append(sum((e % p) * p ** j for j, e in enumerate(block)))
    return VectorFq(spec, tuple(entries))


def xi(code: Code, w: Word) -> Syndrome:
    """Syndrome of psi(w)."""
    return syndrome(code, psi(code, w))


def standardize(v: VectorFq) -> Word:
    """
    The standard word whose psi image is v.

    Args:
        v: A vector of F_q^n

    Returns:
        Word with the power-basis digits of each entry as exponents
    """
    exponents = []
    for x in v.entries:
        exponents.extend(v.spec.coeffs_of(x))
    return Word(tuple(exponents), v.spec.m)


def permute_word(sigma: Permutation, w: Word) -> Word:
    """
    Move the exponent of x_{ij} to x_{sigma(i)j}.

    Args:
        sigma: Permutation of the n positions
        w: The word

    Returns:
        The permuted word
    """
    m = w.m
    n = w.nvars // m
    if sigma.n != n:
        raise DimensionError(f"Permutation of {sigma.n} points applied to a word over {n} positions")
    # Each position carries its block of m exponents
    blocks = [w.exponents[i * m:(i + 1) * m] for i in range(n)]
    moved = sigma.apply_to_sequence(blocks)
    return Word(tuple(e for block in moved for e in block), m)


def permute_variables(sigma: Permutation, var: int, m: int) -> int:
    """Image of the 0-based flat variable under the position permutation."""
    i, j = divmod(var, m)
    return (sigma(i + 1) - 1) * m + j


@dataclass(frozen=True)
class AdmissibleOrder:
    """
    An admissible order on words.

    variable_order lists the 1-based variables from the smallest up, so
    variable_order = (1, 2, ..., nm) means x_1 < x_2 < ... < x_nm.
    """

    kind: str
    variable_order: Tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ParseError(f"Unknown order kind {self.kind!r}; expected one of {ORDER_KINDS}")
        object.__setattr__(self, "variable_order", tuple(int(v) for v in self.variable_order))
        if sorted(self.variable_order) != list(range(1, len(self.variable_order) + 1)):
            raise ParseError(f"Variable order is not a permutation: {list(self.variable_order)}")

    @classmethod
    def natural(cls, kind: str, nvars: int) -> "AdmissibleOrder":
        return cls(kind, tuple(range(1, nvars + 1)))

    @property
    def nvars(self) -> int:
        return len(self.variable_order)

    @cached_property
    def ranks(self) -> Tuple[int, ...]:
        """rank[v] of the 0-based variable v; smaller rank is smaller variable."""
        ranks = [0] * self.nvars
        for r, var in enumerate(self.variable_order):
            ranks[var - 1] = r
        return tuple(ranks)

    @cached_property
    def letters(self) -> Tuple[int, ...]:
        """0-based variables from the smallest up."""
        return tuple(v - 1 for v in self.variable_order)

    def key(self, w: Word) -> tuple:
        """
        Sort key realising the order.

        drl: total degree, then the ascending sequence of variable ranks
        (repeated per exponent) compared at the first difference; this is
        degree-reverse-lexicographic with the variable order as given.
        lex: exponents read from the largest variable down.
        """
        if w.nvars != self.nvars:
            raise DimensionError(f"Order over {self.nvars} variables applied to {w}")
        if self.kind == "drl":
            ranks = self.ranks
            # One rank per unit of exponent, smallest rank first
            seq = []
            for r, v in sorted((ranks[v], v) for v in w.support):
                seq.extend([r] * w.exponents[v])
            return (w.degree, tuple(seq))
        return tuple(w.exponents[v] for v in reversed(self.letters))

    def permuted(self, sigma: Permutation, m: int = 1) -> "AdmissibleOrder":
        """The order x_{sigma(v_1)} < x_{sigma(v_2)} < ... for this order's v_1 < v_2 < ..."""
        return AdmissibleOrder(
            self.kind,
            tuple(permute_variables(sigma, v - 1, m) + 1 for v in self.variable_order),
        )

    def to_dict(self) -> dict:
        return {"kind": self.kind, "variable_order": list(self.variable_order)}

    def __str__(self) -> str:
        return f"{self.kind}{list(self.variable_order)}"


def error_key(order: AdmissibleOrder, w: Word) -> tuple:
    """Sort key of the error-vector order: |Ind| first, then the admissible order."""
    return (level(w), order.key(w))


def _cmp(a: tuple, b: tuple) -> int:
    return (a > b) - (a < b)


def cmp_admissible(order: AdmissibleOrder, u: Word, w: Word) -> int:
    """-1, 0 or 1 as u is smaller than, equal to or larger than w."""
    return _cmp(order.key(u), order.key(w))


def cmp_error_vector(order: AdmissibleOrder, u: Word, w: Word) -> int:
    return _cmp(error_key(order, u), error_key(order, w))


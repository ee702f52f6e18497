"""
Matphi Module

This module walks the cosets of a linear code in increasing error-vector
order and records the canonical-form set N together with the table
phi: N x X -> N of representatives of w*x. The same walk drives the
reduced-basis builder in rbasis.py, so both builders agree on N.
"""

import heapq
import logging
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterator, List, Optional, Tuple

from config import DEFAULT_MAX_CANONICAL_FORMS, DEFAULT_MAX_CODEWORDS, DEFAULT_ORDER
from errors import CapExceededError, DimensionError
from field import FieldSpec
from linear_code import Code, Syndrome, VectorFq, error_capability
from monomial import AdmissibleOrder, Word, error_key, level, psi, xi

logger = logging.getLogger(__name__)


class Worklist:
    """Duplicate-free words kept in increasing error-vector order."""

    def __init__(self, order: AdmissibleOrder):
        self.order = order
        self._heap: List[Tuple[tuple, Tuple[int, ...], Word]] = []
        self._seen = set()

    def insert(self, w: Word) -> bool:
        """
        Add a word unless it was ever inserted before.

        Args:
            w: The word

        Returns:
            True if the word was new
        """
        if w.exponents in self._seen:
            return False
        self._seen.add(w.exponents)
        # exponents break ties so words themselves are never compared
        heapq.heappush(self._heap, (error_key(self.order, w), w.exponents, w))
        return True

    def insert_next(self, w: Word) -> None:
        """Insert x*w for every variable x."""
        for var in range(w.nvars):
            self.insert(w.times(var))

    def next_term(self) -> Word:
        return heapq.heappop(self._heap)[-1]

    def __len__(self) -> int:
        return len(self._heap)


@dataclass(frozen=True)
class CosetVisit:
    """One word taken from the worklist and the N index of its coset."""

    word: Word
    index: int
    new: bool


def check_form_cap(code: Code, max_forms: int) -> None:
    forms = code.q ** code.redundancy
    if forms > max_forms:
        raise CapExceededError(
            f"{code} has {forms} cosets, above the canonical-form cap {max_forms}"
        )


def resolve_order(code: Code, order: Optional[AdmissibleOrder]) -> AdmissibleOrder:
    if order is None:
        return AdmissibleOrder.natural(DEFAULT_ORDER, code.nvars)
    if order.nvars != code.nvars:
        raise DimensionError(f"Order over {order.nvars} variables used with {code.nvars} variables")
    return order


def walk_cosets(code: Code, order: AdmissibleOrder,
                max_forms: int = DEFAULT_MAX_CANONICAL_FORMS) -> Iterator[CosetVisit]:
    """
    Visit words in increasing error-vector order, starting from 1.

    A word opening a new coset joins N and its successors x*w join the
    worklist; every other visited word lands in a coset already in N.

    Args:
        code: The code
        order: Admissible order breaking ties between equal |Ind|
        max_forms: Cap on q^(n-k)

    Yields:
        CosetVisit for every word taken from the worklist
    """
    check_form_cap(code, max_forms)
    worklist = Worklist(order)
    worklist.insert(Word.one(code.nvars, code.spec.m))
    known: Dict[Syndrome, int] = {}

    while worklist:
        w = worklist.next_term()
        s = xi(code, w)
        index = known.get(s)
        # First word of its coset: the canonical form, only its successors are explored
        if index is None:
            index = len(known)
            known[s] = index
            worklist.insert_next(w)
            logger.debug(f"New canonical form N[{index + 1}] = {w}")
            yield CosetVisit(w, index, True)
        else:
            yield CosetVisit(w, index, False)


@dataclass(frozen=True)
class MatphiTable:
    """Canonical forms N, their vectors and flags, and the phi table (0-based)."""

    spec: FieldSpec
    n: int
    words: Tuple[Word, ...]
    vectors: Tuple[VectorFq, ...]
    flags: Tuple[bool, ...]
    phi: Tuple[Tuple[int, ...], ...]
    order: AdmissibleOrder
    t: int

    @property
    def N(self) -> Tuple[Word, ...]:
        return self.words

    @property
    def nvars(self) -> int:
        return self.n * self.spec.m

    @cached_property
    def positions(self) -> Dict[Word, int]:
        return {w: i for i, w in enumerate(self.words)}

    def index_of(self, w: Word) -> Optional[int]:
        return self.positions.get(w)

    def __len__(self) -> int:
        return len(self.words)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready export with 1-based phi rows."""
        return {
            "N": [str(w) for w in self.words],
            "matphi": [
                {
                    "vector": v.to_json(),
                    "flag": int(flag),
                    "phi_row": [j + 1 for j in row],
                }
                for v, flag, row in zip(self.vectors, self.flags, self.phi)
            ],
            "t": self.t,
            "order": self.order.to_dict(),
        }


def build_matphi(code: Code, order: Optional[AdmissibleOrder] = None,
                 max_forms: int = DEFAULT_MAX_CANONICAL_FORMS,
                 max_codewords: int = DEFAULT_MAX_CODEWORDS) -> MatphiTable:
    """
    Compute the canonical forms and the phi table of a code.

    Args:
        code: The code
        order: Admissible order, drl on x_1 < ... < x_nm by default
        max_forms: Cap on the number of cosets
        max_codewords: Cap on the codeword enumeration behind t

    Returns:
        The finished table
    """
    order = resolve_order(code, order)
    t = error_capability(code, max_codewords)
    started = time.perf_counter()

    words: List[Word] = []
    phi: List[List[Optional[int]]] = []
    positions: Dict[Word, int] = {}

    for visit in walk_cosets(code, order, max_forms):
        w = visit.word
        if visit.new:
            positions[w] = len(words)
            words.append(w)
            phi.append([None] * code.nvars)
        # w = x * u for each letter x of w; the entry phi(u, x) is the coset of w
        for var in w.support:
            row = positions.get(w.over(var))
            if row is not None:
                phi[row][var] = visit.index

    missing = sum(row.count(None) for row in phi)
    if missing:
        raise RuntimeError(f"Coset walk left {missing} phi entries unset")

    vectors = tuple(psi(code, w) for w in words)
    table = MatphiTable(
        spec=code.spec,
        n=code.n,
        words=tuple(words),
        vectors=vectors,
        flags=tuple(v.weight <= t for v in vectors),
        phi=tuple(tuple(row) for row in phi),
        order=order,
        t=t,
    )
    logger.info(
        f"Built matphi for {code}: {len(words)} canonical forms, "
        f"{code.nvars} variables, t={t} in {time.perf_counter() - started:.2f}s"
    )
    return table


def cf_index(table: MatphiTable, w: Word) -> int:
    """
    N index of the canonical form of w.

    The letters of w are consumed from the smallest variable up, one phi
    lookup per letter, starting from 1.
    """
    if w.nvars != table.nvars:
        raise DimensionError(f"Word over {w.nvars} variables used with a table over {table.nvars}")
    # Start from the coset of 1
    index = 0
    for var in table.order.letters:
        for _ in range(w.exponents[var]):
            index = table.phi[index][var]
    return index


def canonical_form_cf(table: MatphiTable, w: Word) -> Word:
    return table.words[cf_index(table, w)]


def coset_level_slice(table: MatphiTable, L: int) -> List[Word]:
    """Entries of N with |Ind| = L, in N order."""
    return [w for w in table.words if level(w) == L]

"""
Reduced Basis Module

This module computes the reduced basis G of a linear code for the
error-vector order: binomials head - tail with tail in N and head a
divisibility-minimal word outside N in the same coset. Binary codes reduce
every word to its unique canonical form Can(w, G) through G; for other
fields the same rewriting can cycle, which reduce_traced detects.
"""

import logging
import random
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple, Union

from config import DEFAULT_MAX_CANONICAL_FORMS, DEFAULT_MAX_CODEWORDS
from errors import CharacteristicError, DimensionError, ParseError
from field import FieldSpec
from linear_code import Code, error_capability
from matphi import resolve_order, walk_cosets
from monomial import AdmissibleOrder, Word, level, permute_word
from permutation import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Binomial:
    """The rewrite rule head -> tail; both words share a coset."""

    head: Word
    tail: Word

    @property
    def level(self) -> int:
        return level(self.head)

    def permuted(self, sigma: Permutation) -> "Binomial":
        return Binomial(permute_word(sigma, self.head), permute_word(sigma, self.tail))

    @classmethod
    def parse(cls, text: str, nvars: int, m: int = 1) -> "Binomial":
        """Parse 'x2*x5 - x1*x6'."""
        parts = text.split("-")
        if len(parts) != 2:
            raise ParseError(f"Binomial needs exactly one '-': {text!r}")
        return cls(Word.parse(parts[0], nvars, m), Word.parse(parts[1], nvars, m))

    def __str__(self) -> str:
        return f"{self.head} - {self.tail}"


@dataclass(frozen=True)
class ReducedBasis:
    """Binomials in increasing error-vector order of their heads, with N."""

    spec: FieldSpec
    n: int
    binomials: Tuple[Binomial, ...]
    words: Tuple[Word, ...]
    order: AdmissibleOrder
    t: int

    @property
    def N(self) -> Tuple[Word, ...]:
        return self.words

    @property
    def nvars(self) -> int:
        return self.n * self.spec.m

    @property
    def heads(self) -> Tuple[Word, ...]:
        return tuple(b.head for b in self.binomials)

    @cached_property
    def head_levels(self) -> Tuple[int, ...]:
        return tuple(b.level for b in self.binomials)

    @cached_property
    def levels(self) -> Dict[int, Tuple[Binomial, ...]]:
        """Binomials grouped by |Ind(head)|, levels ascending."""
        grouped: Dict[int, List[Binomial]] = {}
        for b, L in zip(self.binomials, self.head_levels):
            grouped.setdefault(L, []).append(b)
        return {L: tuple(grouped[L]) for L in sorted(grouped)}

    @cached_property
    def power_index(self) -> Dict[int, int]:
        """0-based variable -> 0-based index of the binomial x^p - 1, when present."""
        p = self.spec.p
        out = {}
        for i, b in enumerate(self.binomials):
            support = b.head.support
            if len(support) == 1 and b.head.exponents[support[0]] == p and b.tail.is_one:
                out[support[0]] = i
        return out

    @cached_property
    def head_set(self) -> frozenset:
        return frozenset(self.heads)

    def __len__(self) -> int:
        return len(self.binomials)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": [str(w) for w in self.words],
            "G": [
                {"level": L, "binomials": [[str(b.head), str(b.tail)] for b in group]}
                for L, group in self.levels.items()
            ],
            "t": self.t,
            "order": self.order.to_dict(),
        }


def build_reduced_basis(code: Code, order: Optional[AdmissibleOrder] = None,
                        max_forms: int = DEFAULT_MAX_CANONICAL_FORMS,
                        max_codewords: int = DEFAULT_MAX_CODEWORDS) -> ReducedBasis:
    """
    Compute N and the reduced basis G of a code.

    Walks the cosets like build_matphi. A word whose coset is already in N
    yields the binomial word - representative unless an earlier head
    divides it. A word opening a new coset joins N even when it is a
    multiple of a head, which only happens outside the binary case.

    Args:
        code: The code
        order: Admissible order, drl on x_1 < ... < x_nm by default
        max_forms: Cap on the number of cosets
        max_codewords: Cap on the codeword enumeration behind t

    Returns:
        The reduced basis
    """
    order = resolve_order(code, order)
    t = error_capability(code, max_codewords)
    started = time.perf_counter()

    words: List[Word] = []
    binomials: List[Binomial] = []
    for visit in walk_cosets(code, order, max_forms):
        w = visit.word
        if visit.new:
            words.append(w)
            continue
        # A multiple of an earlier head is already reducible
        if any(b.head.divides(w) for b in binomials):
            continue
        # Otherwise w is a new head; its tail is the form that opened the coset
        binomial = Binomial(w, words[visit.index])
        logger.debug(f"New binomial G[{len(binomials) + 1}] = {binomial}")
        binomials.append(binomial)

    basis = ReducedBasis(
        spec=code.spec,
        n=code.n,
        binomials=tuple(binomials),
        words=tuple(words),
        order=order,
        t=t,
    )
    logger.info(
        f"Built reduced basis for {code}: {len(binomials)} binomials, "
        f"{len(words)} canonical forms, t={t} in {time.perf_counter() - started:.2f}s"
    )
    return basis


@dataclass(frozen=True)
class ReductionStep:
    """Word after one rewrite and the 1-based basis index used (None: implicit x^p -> 1)."""

    word: Word
    binomial: Optional[int]


@dataclass(frozen=True)
class Canonical:
    word: Word


@dataclass(frozen=True)
class CycleDetected:
    """The rewrite sequence returned to the word at trace position start."""

    start: int
    cycle: Tuple[Word, ...]


@dataclass(frozen=True)
class StepLimit:
    word: Word
    limit: int


ReductionOutcome = Union[Canonical, CycleDetected, StepLimit]


@dataclass(frozen=True)
class ReductionTrace:
    start: Word
    steps: Tuple[ReductionStep, ...]
    outcome: ReductionOutcome

    @property
    def words(self) -> Tuple[Word, ...]:
        return (self.start,) + tuple(step.word for step in self.steps)

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "start": str(self.start),
            "steps": [{"word": str(s.word), "binomial": s.binomial} for s in self.steps],
        }
        if isinstance(self.outcome, Canonical):
            doc["outcome"] = {"canonical": str(self.outcome.word)}
        elif isinstance(self.outcome, CycleDetected):
            doc["outcome"] = {
                "cycle_start": self.outcome.start,
                "cycle": [str(w) for w in self.outcome.cycle],
            }
        else:
            doc["outcome"] = {"step_limit": self.outcome.limit, "word": str(self.outcome.word)}
        return doc


def _check_word(basis: ReducedBasis, w: Word) -> None:
    if w.nvars != basis.nvars or w.m != basis.spec.m:
        raise DimensionError(f"Word over {w.nvars} variables used with a basis over {basis.nvars}")


def _require_binary(basis: ReducedBasis) -> None:
    if not basis.spec.is_binary:
        raise CharacteristicError(f"Binary reduction needs a code over GF(2), got {basis.spec}")


def reduce_step(basis: ReducedBasis, w: Word,
                rng: Optional[random.Random] = None) -> Optional[ReductionStep]:
    """
    Apply one rewrite to w.

    A non-standard word first loses one p-th power x^p -> 1, lowest variable
    first. A standard word is rewritten by a dividing head of the highest
    level, the first such head in basis order. With rng, a random
    applicable rewrite is taken instead.

    Args:
        basis: The reduced basis
        w: The word
        rng: Optional source of random rewrite choices

    Returns:
        The step taken, or None if w is irreducible
    """
    # Strip a p-th power first
    p = basis.spec.p
    powers = [v for v in w.support if w.exponents[v] >= p]
    if powers:
        var = rng.choice(powers) if rng else powers[0]
        exponents = list(w.exponents)
        exponents[var] -= p
        index = basis.power_index.get(var)
        return ReductionStep(Word(tuple(exponents), w.m), None if index is None else index + 1)

    # Then rewrite by a dividing head, highest level first
    matches = [i for i, b in enumerate(basis.binomials) if b.head.divides(w)]
    if not matches:
        return None
    if rng:
        chosen = rng.choice(matches)
    else:
        top = max(basis.head_levels[i] for i in matches)
        chosen = next(i for i in matches if basis.head_levels[i] == top)
    b = basis.binomials[chosen]
    return ReductionStep(w.quotient(b.head) * b.tail, chosen + 1)


def default_step_limit(basis: ReducedBasis, w: Word) -> int:
    top = max([w.degree, 1] + [h.degree for h in basis.heads])
    return 10 * basis.nvars * top


def reduce_once_binary(basis: ReducedBasis, w: Word) -> Optional[Word]:
    """One reduction step of a binary word; None if the word is irreducible."""
    _require_binary(basis)
    _check_word(basis, w)
    step = reduce_step(basis, w)
    return step.word if step else None


def canonical_form_binary(basis: ReducedBasis, w: Word,
                          rng: Optional[random.Random] = None) -> Word:
    """
    The canonical form Can(w, G) of a binary word.

    Args:
        basis: Reduced basis of a binary code
        w: The word
        rng: Optional source of random rewrite choices

    Returns:
        The irreducible word reached from w
    """
    _require_binary(basis)
    _check_word(basis, w)
    limit = default_step_limit(basis, w)
    for _ in range(limit):
        step = reduce_step(basis, w, rng)
        if step is None:
            return w
        w = step.word
    raise RuntimeError(f"Binary reduction did not terminate within {limit} steps")


def reduce_traced(basis: ReducedBasis, w: Word, limit: Optional[int] = None) -> ReductionTrace:
    """
    Reduce w step by step, recording every rewrite.

    Stops at an irreducible word, at the first revisited word, or after
    limit steps.

    Args:
        basis: Reduced basis over any field
        w: The word
        limit: Step cap, 10 * nm * max degree by default

    Returns:
        The trace and its outcome
    """
    _check_word(basis, w)
    if limit is None:
        limit = default_step_limit(basis, w)

    start = w
    steps: List[ReductionStep] = []
    visited = {w: 0}
    current = w
    while True:
        if len(steps) >= limit:
            outcome: ReductionOutcome = StepLimit(current, limit)
            break
        step = reduce_step(basis, current)
        if step is None:
            outcome = Canonical(current)
            break
        steps.append(step)
        current = step.word
        # A revisited word closes a cycle
        if current in visited:
            first = visited[current]
            path = (start,) + tuple(s.word for s in steps)
            outcome = CycleDetected(first, path[first:])
            logger.debug(f"Reduction of {start} cycles back to {current} after {len(steps)} steps")
            break
        visited[current] = len(steps)

    return ReductionTrace(start, tuple(steps), outcome)


def reduces_to_zero(basis: ReducedBasis, b: Binomial) -> bool:
    """True if head and tail of b share their canonical form modulo the basis."""
    return canonical_form_binary(basis, b.head) == canonical_form_binary(basis, b.tail)

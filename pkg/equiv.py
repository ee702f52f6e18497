"""
Equivalence Module

This module handles permutation equivalence of linear codes: the action of
a position permutation on matphi tables and reduced bases, the
equivalence checks on both structures, the Heads/Irreds level statistics
of a reduced basis, and a permutation finder that either returns a
verified witness or a certificate of non-equivalence.
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from config import (
    DEFAULT_MAX_BRUTE_FORCE_LENGTH,
    DEFAULT_MAX_CANONICAL_FORMS,
    DEFAULT_MAX_CODEWORDS,
    DEFAULT_MAX_SEARCH_LENGTH,
)
from errors import CapExceededError, CharacteristicError, DimensionError, FieldMismatchError
from linear_code import Code, VectorFq, codeword_array, weight_distribution
from matphi import MatphiTable, cf_index
from monomial import AdmissibleOrder, Word, ind, permute_variables, permute_word
from permutation import Permutation
from rbasis import ReducedBasis, build_reduced_basis, canonical_form_binary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelStats:
    """Per-position counts of level-L heads and of their tails."""

    level: int
    heads: Tuple[int, ...]
    irreds: Tuple[int, ...]

    def permuted(self, sigma: Permutation) -> "LevelStats":
        return LevelStats(self.level, sigma.apply_to_sequence(self.heads), sigma.apply_to_sequence(self.irreds))

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "heads": list(self.heads), "irreds": list(self.irreds)}


@dataclass(frozen=True)
class Equivalent:
    witness: Permutation
    method: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": "equivalent",
            "witness": self.witness.to_list(),
            "cycles": self.witness.cycle_notation(),
            "method": self.method,
        }


@dataclass(frozen=True)
class NotEquivalent:
    certificate: str
    layer: str

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": "not_equivalent", "layer": self.layer, "certificate": self.certificate}


@dataclass(frozen=True)
class Undecided:
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": "undecided", "reason": self.reason}


EquivVerdict = Union[Equivalent, NotEquivalent, Undecided]


def _check_pair(spec_a, spec_b, n_a: int, n_b: int) -> None:
    if spec_a != spec_b:
        raise FieldMismatchError(f"Codes over different fields: {spec_a} and {spec_b}")
    if n_a != n_b:
        raise DimensionError(f"Codes of different lengths: {n_a} and {n_b}")


def _check_sigma(sigma: Permutation, n: int) -> None:
    if sigma.n != n:
        raise DimensionError(f"Permutation of {sigma.n} points used with length {n}")


def permute_basis(sigma: Permutation, basis: ReducedBasis) -> ReducedBasis:
    """
    Apply sigma to every binomial and canonical form of a basis.

    The result is the reduced basis of sigma(C) for the permuted variable
    order, with the binomials in the same sequence.

    Args:
        sigma: Permutation of the positions
        basis: The reduced basis

    Returns:
        The permuted basis
    """
    _check_sigma(sigma, basis.n)
    return ReducedBasis(
        spec=basis.spec,
        n=basis.n,
        binomials=tuple(b.permuted(sigma) for b in basis.binomials),
        words=tuple(permute_word(sigma, w) for w in basis.words),
        order=basis.order.permuted(sigma, basis.spec.m),
        t=basis.t,
    )


def permute_matphi(sigma: Permutation, table: MatphiTable) -> MatphiTable:
    """
    Relabel a matphi table by sigma.

    Canonical forms and vectors are permuted, and phi column x moves to
    column sigma(x); row indices keep their meaning.

    Args:
        sigma: Permutation of the positions
        table: The table

    Returns:
        Matphi table of sigma(C) over sigma(N)
    """
    _check_sigma(sigma, table.n)
    m = table.spec.m
    images = [permute_variables(sigma, v, m) for v in range(table.nvars)]
    phi = []
    for row in table.phi:
        moved = [0] * table.nvars
        for v, target in enumerate(row):
            moved[images[v]] = target
        phi.append(tuple(moved))

    return MatphiTable(
        spec=table.spec,
        n=table.n,
        words=tuple(permute_word(sigma, w) for w in table.words),
        vectors=tuple(v.permuted(sigma) for v in table.vectors),
        flags=table.flags,
        phi=tuple(phi),
        order=table.order.permuted(sigma, m),
        t=table.t,
    )


def matphi_equivalent(sigma: Permutation, t1: MatphiTable, t2: MatphiTable) -> bool:
    """
    Check phi-equivalence of two tables under sigma.

    Each canonical form w of t1 is matched with the coset of sigma(w) in
    t2; the match must be a bijection that carries phi1(w, x) to
    phi2(., sigma(x)).

    Args:
        sigma: Permutation of the positions
        t1: Table of the first code
        t2: Table of the second code

    Returns:
        True if sigma maps the first code onto the second
    """
    _check_pair(t1.spec, t2.spec, t1.n, t2.n)
    _check_sigma(sigma, t1.n)
    if len(t1) != len(t2):
        return False

    # Pair each canonical form with the coset of its image; the pairing must be one to one
    m = t1.spec.m
    images = [permute_variables(sigma, v, m) for v in range(t1.nvars)]
    mapping = [cf_index(t2, permute_word(sigma, w)) for w in t1.words]
    if len(set(mapping)) != len(mapping):
        return False

    # phi1(w, x) must be paired with phi2(sigma(w), sigma(x))
    for r, row in enumerate(t1.phi):
        target = t2.phi[mapping[r]]
        for v, j in enumerate(row):
            if mapping[j] != target[images[v]]:
                return False
    return True


def level_stats(basis: ReducedBasis, L: int) -> LevelStats:
    """
    Heads(L) and Irreds(L) of a reduced basis.

    Args:
        basis: The reduced basis
        L: Level |Ind(head)|

    Returns:
        Counts of level-L heads and tails touching each position
    """
    heads = [0] * basis.n
    irreds = [0] * basis.n
    for b in basis.levels.get(L, ()):
        for i in ind(b.head):
            heads[i - 1] += 1
        for i in ind(b.tail):
            irreds[i - 1] += 1
    return LevelStats(L, tuple(heads), tuple(irreds))


def bases_equivalent(g1: ReducedBasis, g2: ReducedBasis, sigma: Permutation) -> bool:
    """
    Mutual reduction to zero of sigma(g1) and g2.

    Binomials of g2 are pulled back through sigma^-1 and reduced modulo g1,
    which is reduction modulo sigma(g1) read in g1's variables.

    Args:
        g1: Reduced basis of the first binary code
        g2: Reduced basis of the second binary code
        sigma: Permutation of the positions

    Returns:
        True if both bases describe sigma(C1) = C2
    """
    for g in (g1, g2):
        if not g.spec.is_binary:
            raise CharacteristicError(f"Basis equivalence needs binary codes, got {g.spec}")
    _check_pair(g1.spec, g2.spec, g1.n, g2.n)
    _check_sigma(sigma, g1.n)

    # Every binomial of sigma(g1) must reduce to zero modulo g2
    for b in g1.binomials:
        moved = b.permuted(sigma)
        if canonical_form_binary(g2, moved.head) != canonical_form_binary(g2, moved.tail):
            return False

    # And the other way round
    inverse = sigma.inverse()
    for b in g2.binomials:
        pulled = b.permuted(inverse)
        if canonical_form_binary(g1, pulled.head) != canonical_form_binary(g1, pulled.tail):
            return False
    return True


def verify_permutation(c1: Code, c2: Code, sigma: Permutation) -> bool:
    """
    Ground-truth check that sigma(C1) = C2.

    Args:
        c1: First code
        c2: Second code
        sigma: Permutation of the positions

    Returns:
        True if the dimensions agree and every permuted generator row lies in C2
    """
    _check_pair(c1.spec, c2.spec, c1.n, c2.n)
    _check_sigma(sigma, c1.n)
    if c1.k != c2.k:
        return False
    return all(c2.contains(VectorFq(c1.spec, row).permuted(sigma)) for row in c1.generator)


def unit_coset_profile(code: Code) -> Tuple[int, Tuple[int, ...]]:
    """
    Zero columns of H and the sizes of the classes of proportional columns.

    Positions whose unit vectors share cosets up to a scalar fall in one
    class; the profile does not depend on H or on position order.
    """
    spec = code.spec
    classes: Dict[Tuple[int, ...], int] = {}
    zero = 0
    for column in code.H:
        # Scale each column to a leading 1 so proportional columns share a key
        lead = next((x for x in column if x), 0)
        if not lead:
            zero += 1
            continue
        scale = spec.inv(lead)
        key = tuple(spec.mul(scale, x) for x in column)
        classes[key] = classes.get(key, 0) + 1
    return zero, tuple(sorted(classes.values()))


def _single_variable_heads(basis: ReducedBasis) -> List[str]:
    return [str(b.head) for b in basis.binomials if b.head.degree == 1]


def position_signatures(code: Code, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> List[Tuple[int, ...]]:
    """
    For each position, the number of codewords of each weight that are nonzero there.

    Args:
        code: The code
        max_codewords: Enumeration cap

    Returns:
        One tuple of length n+1 per position
    """
    words = codeword_array(code, max_codewords)
    nonzero = words != 0
    weights = nonzero.sum(axis=1)
    return [
        tuple(np.bincount(weights[nonzero[:, i]], minlength=code.n + 1).tolist())
        for i in range(code.n)
    ]


class PermutationSearch:
    """
    Depth-first search for sigma with sigma(C1) = C2.

    Positions are assigned most constrained first. After each assignment
    every codeword of C1 supported on the assigned positions must land in
    C2, which never discards a valid permutation. An optional extra test
    prunes further on basis structure.
    """

    def __init__(self, c1: Code, c2: Code, candidates: Sequence[Sequence[int]],
                 max_codewords: int = DEFAULT_MAX_CODEWORDS,
                 extra_check: Optional[Callable[[int, Dict[int, int]], bool]] = None):
        """
        Initialize the search.

        Args:
            c1: First code
            c2: Second code
            candidates: 0-based candidate images for each 0-based position
            max_codewords: Enumeration cap
            extra_check: Called with (depth, assignment) after each assignment
        """
        self.c1 = c1
        self.c2 = c2
        self.n = c1.n
        self.candidates = [sorted(cands, key=lambda j, i=i: (j != i, j)) for i, cands in enumerate(candidates)]
        self.positions = sorted(range(self.n), key=lambda i: (len(self.candidates[i]), i))
        self.extra_check = extra_check
        self.nodes = 0

        words1 = codeword_array(c1, max_codewords).tolist()
        self.members2 = {tuple(row) for row in codeword_array(c2, max_codewords).tolist()}

        # Each codeword is checked once, at the depth where its support becomes fully assigned
        masks = [sum(1 << i for i, x in enumerate(row) if x) for row in words1]
        self.checks: List[List[List[int]]] = []
        assigned = 0
        for position in self.positions:
            assigned |= 1 << position
            self.checks.append([
                row for row, mask in zip(words1, masks)
                if mask and not mask & ~assigned and mask >> position & 1
            ])

    def _images_in_c2(self, depth: int, assignment: Dict[int, int]) -> bool:
        for row in self.checks[depth]:
            image = [0] * self.n
            for i, x in enumerate(row):
                if x:
                    image[assignment[i]] = x
            if tuple(image) not in self.members2:
                return False
        return True

    def run(self) -> Optional[Permutation]:
        """
        Search in a fixed branch order, identity images first.

        Returns:
            The first verified permutation, or None when none exists
        """
        assignment: Dict[int, int] = {}
        used = [False] * self.n

        def extend(depth: int) -> Optional[Permutation]:
            # All positions placed; confirm on the generator rows
            if depth == self.n:
                sigma = Permutation(tuple(assignment[i] + 1 for i in range(self.n)))
                return sigma if verify_permutation(self.c1, self.c2, sigma) else None

            position = self.positions[depth]
            for j in self.candidates[position]:
                if used[j]:
                    continue
                self.nodes += 1
                assignment[position] = j
                used[j] = True
                # Prune as soon as a completed codeword leaves C2
                if self._images_in_c2(depth, assignment) and (
                    self.extra_check is None or self.extra_check(depth, assignment)
                ):
                    found = extend(depth + 1)
                    if found is not None:
                        return found
                used[j] = False
                del assignment[position]
            return None

        return extend(0)


def _head_compatibility(search: PermutationSearch, g1: ReducedBasis,
                        g2: ReducedBasis) -> Callable[[int, Dict[int, int]], bool]:
    """Heads of g1 complete at each depth must map onto heads of g2."""
    assigned = set()
    completed: List[List] = []
    for position in search.positions:
        assigned.add(position + 1)
        completed.append([
            b.head for b in g1.binomials
            if position + 1 in ind(b.head) and ind(b.head) <= assigned
        ])

    heads2 = g2.head_set

    def check(depth: int, assignment: Dict[int, int]) -> bool:
        if not completed[depth]:
            return True
        for head in completed[depth]:
            if _move_partial(head, assignment) not in heads2:
                return False
        return True

    return check


def _move_partial(head: Word, assignment: Dict[int, int]) -> Word:
    """Image of a word whose positions are all assigned."""
    m = head.m
    exponents = [0] * head.nvars
    for i in ind(head):
        target = assignment[i - 1]
        exponents[target * m:(target + 1) * m] = head.exponents[(i - 1) * m:i * m]
    return Word(tuple(exponents), m)


def find_permutation(c1: Code, c2: Code, order: Optional[AdmissibleOrder] = None,
                     max_length: int = DEFAULT_MAX_SEARCH_LENGTH,
                     max_codewords: int = DEFAULT_MAX_CODEWORDS,
                     max_forms: int = DEFAULT_MAX_CANONICAL_FORMS) -> EquivVerdict:
    """
    Decide permutation equivalence of two codes.

    Invariant layers run first: dimensions, weight distributions, the
    structure of unit-vector cosets and per-position weight signatures.
    For binary codes a search guided by the reduced bases (matching
    Heads/Irreds at levels 2..t+2 and mapping heads onto heads) runs next;
    an exhaustive search with codeword pruning settles the rest.

    Args:
        c1: First code
        c2: Second code
        order: Admissible order for the reduced bases, natural drl by default
        max_length: Largest n searched
        max_codewords: Codeword enumeration cap
        max_forms: Canonical-form cap for the reduced bases

    Returns:
        Equivalent with a verified witness, NotEquivalent with a certificate,
        or Undecided when a cap stops the search
    """
    _check_pair(c1.spec, c2.spec, c1.n, c2.n)
    n = c1.n
    label1 = c1.name or "C1"
    label2 = c2.name or "C2"
    started = time.perf_counter()

    # Parameters and caps
    if c1.k != c2.k:
        return NotEquivalent(f"{label1} has dimension {c1.k} but {label2} has dimension {c2.k}", "parameters")
    if n > max_length:
        return Undecided(f"length {n} exceeds the search cap {max_length}")
    if c1.q ** c1.k > max_codewords:
        return Undecided(f"{c1.q ** c1.k} codewords exceed the enumeration cap {max_codewords}")

    # Same code already
    identity = Permutation.identity(n)
    if verify_permutation(c1, c2, identity):
        return Equivalent(identity, "identity")

    # Weight distributions
    wd1 = weight_distribution(c1, max_codewords)
    wd2 = weight_distribution(c2, max_codewords)
    if wd1 != wd2:
        logger.info("Weight distributions separate the codes")
        return NotEquivalent(
            f"weight distributions differ: {label1} {wd1} vs {label2} {wd2}", "weight_distribution"
        )

    # Single-variable heads mark unit vectors that are not canonical forms
    binary = c1.spec.is_binary and c1.q ** c1.redundancy <= max_forms
    g1 = g2 = None
    if binary:
        g1 = build_reduced_basis(c1, order, max_forms, max_codewords)
        g2 = build_reduced_basis(c2, order, max_forms, max_codewords)
        singles1 = _single_variable_heads(g1)
        singles2 = _single_variable_heads(g2)
        if len(singles1) != len(singles2):
            logger.info("Single-variable heads separate the codes")
            return NotEquivalent(
                f"the reduced basis of {label1} has {len(singles1)} binomials with a "
                f"single-variable head ({', '.join(singles1)}) while the reduced basis of "
                f"{label2} has {len(singles2)} ({', '.join(singles2)})",
                "unit_cosets",
            )
    # Unit-vector cosets up to scalars, for every field
    profile1 = unit_coset_profile(c1)
    profile2 = unit_coset_profile(c2)
    if profile1 != profile2:
        logger.info("Unit-vector coset structure separates the codes")
        return NotEquivalent(
            f"zero columns and classes of proportional parity-check columns differ: "
            f"{label1} {profile1} vs {label2} {profile2}",
            "unit_cosets",
        )

    # Per-position signatures; only positions with equal signatures may be matched
    sig1 = position_signatures(c1, max_codewords)
    sig2 = position_signatures(c2, max_codewords)
    if sorted(sig1) != sorted(sig2):
        logger.info("Position signatures separate the codes")
        return NotEquivalent(
            f"the multisets of per-position codeword weight signatures of {label1} and {label2} differ",
            "position_signatures",
        )
    candidates = [[j for j in range(n) if sig2[j] == sig1[i]] for i in range(n)]

    # Binary codes: search among permutations carrying one reduced basis onto the other
    if binary:
        witness = _basis_guided_search(c1, c2, g1, g2, candidates, max_codewords)
        if witness is not None:
            logger.info(f"Basis-guided search found {witness} in {time.perf_counter() - started:.2f}s")
            return Equivalent(witness, "reduced_basis")

    # Exhaustive search; a miss here is a proof of non-equivalence
    search = PermutationSearch(c1, c2, candidates, max_codewords)
    witness = search.run()
    logger.info(f"Exhaustive search visited {search.nodes} nodes in {time.perf_counter() - started:.2f}s")
    if witness is not None:
        return Equivalent(witness, "backtracking")
    return NotEquivalent(
        f"no permutation consistent with the per-position signatures maps {label1} onto {label2}",
        "exhaustive_search",
    )


def _basis_guided_search(c1: Code, c2: Code, g1: ReducedBasis, g2: ReducedBasis,
                         candidates: Sequence[Sequence[int]],
                         max_codewords: int) -> Optional[Permutation]:
    """Search restricted to permutations carrying G1 onto G2."""
    if len(g1) != len(g2):
        return None

    # Keep only images with the same Heads and Irreds counts at every level up to t+2
    refined = [list(c) for c in candidates]
    for L in range(2, g1.t + 3):
        s1, s2 = level_stats(g1, L), level_stats(g2, L)
        refined = [
            [j for j in cands if s1.heads[i] == s2.heads[j] and s1.irreds[i] == s2.irreds[j]]
            for i, cands in enumerate(refined)
        ]
    if any(not cands for cands in refined):
        return None

    search = PermutationSearch(c1, c2, refined, max_codewords)
    # Heads must land on heads once all their positions are placed
    search.extra_check = _head_compatibility(search, g1, g2)
    witness = search.run()
    logger.debug(f"Basis-guided search visited {search.nodes} nodes")
    return witness


def brute_force_permutation(c1: Code, c2: Code, max_length: int = DEFAULT_MAX_BRUTE_FORCE_LENGTH,
                            progress: bool = False) -> Optional[Permutation]:
    """
    Scan all n! permutations for one mapping C1 onto C2.

    Args:
        c1: First code
        c2: Second code
        max_length: Largest n scanned
        progress: Show a tqdm progress bar

    Returns:
        The first witness in lexicographic order of images, or None
    """
    _check_pair(c1.spec, c2.spec, c1.n, c2.n)
    n = c1.n
    if n > max_length:
        raise CapExceededError(f"Brute force over {n}! permutations exceeds the cap n <= {max_length}")
    if c1.k != c2.k:
        return None

    scan = itertools.permutations(range(1, n + 1))
    for images in tqdm(scan, total=math.factorial(n), desc="Permutations", disable=not progress):
        sigma = Permutation(images)
        if verify_permutation(c1, c2, sigma):
            return sigma
    return None

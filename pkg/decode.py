"""
Decoding Module

This module decodes received vectors up to the error-correcting capability
t of a code, either through the reduced basis (binary codes) or through the
matphi table (any field). It also decodes whole spaces of received vectors
through a thread pool.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Sequence, Union

from tqdm import tqdm

from config import DEFAULT_MAX_CODEWORDS, DEFAULT_THREADS
from errors import CapExceededError, CharacteristicError, DimensionError, FieldMismatchError
from linear_code import Code, VectorFq
from matphi import MatphiTable, cf_index
from monomial import psi, standardize
from rbasis import ReducedBasis, canonical_form_binary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Corrected:
    """received = codeword + error with weight(error) <= t."""

    error: VectorFq
    codeword: VectorFq

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": "corrected",
            "error": self.error.to_json(),
            "codeword": self.codeword.to_json(),
            "weight": self.error.weight,
        }


@dataclass(frozen=True)
class TooManyErrors:
    """The coset leader found has weight above t."""

    canonical_weight: int

    def to_dict(self) -> Dict[str, Any]:
        return {"outcome": "too_many_errors", "canonical_weight": self.canonical_weight}


DecodeResult = Union[Corrected, TooManyErrors]


def _check_received(code: Code, received: VectorFq) -> None:
    if received.spec != code.spec:
        raise FieldMismatchError(f"Received vector over {received.spec} for a code over {code.spec}")
    if received.n != code.n:
        raise DimensionError(f"Received vector has length {received.n}, code length is {code.n}")


def decode_binary(basis: ReducedBasis, code: Code, received: VectorFq) -> DecodeResult:
    """
    Decode a binary received vector through its canonical form.

    Args:
        basis: Reduced basis of the code
        code: The code
        received: Received vector

    Returns:
        Corrected if psi(Can(w, G)) has weight <= t, else TooManyErrors
    """
    if not code.spec.is_binary:
        raise CharacteristicError(f"Reduced-basis decoding needs a binary code, got {code.spec}")
    _check_received(code, received)

    canonical = canonical_form_binary(basis, standardize(received))
    error = psi(code, canonical)
    if error.weight > basis.t:
        return TooManyErrors(error.weight)
    return Corrected(error=error, codeword=received - error)


def decode_matphi(table: MatphiTable, code: Code, received: VectorFq) -> DecodeResult:
    """
    Decode a received vector through the matphi table.

    Args:
        table: Matphi table of the code
        code: The code
        received: Received vector

    Returns:
        Corrected if the canonical form's entry is flagged, else TooManyErrors
    """
    _check_received(code, received)
    index = cf_index(table, standardize(received))
    error = table.vectors[index]
    if not table.flags[index]:
        return TooManyErrors(error.weight)
    return Corrected(error=error, codeword=received - error)


def all_vectors(code: Code, max_vectors: int = DEFAULT_MAX_CODEWORDS) -> Iterator[VectorFq]:
    """
    Every vector of F_q^n in lexicographic order of entries.

    Args:
        code: The code fixing q and n
        max_vectors: Enumeration cap

    Yields:
        The vectors
    """
    total = code.q ** code.n
    if total > max_vectors:
        raise CapExceededError(f"F_{code.q}^{code.n} has {total} vectors, above the cap {max_vectors}")
    for entries in itertools.product(range(code.q), repeat=code.n):
        yield VectorFq(code.spec, entries)


class DecoderPool:
    """Decode many received vectors concurrently with ordered results."""

    def __init__(self, decode_fn: Callable[[VectorFq], DecodeResult],
                 max_workers: int = DEFAULT_THREADS):
        """
        Initialize the pool.

        Args:
            decode_fn: Decoder for a single received vector
            max_workers: Number of worker threads
        """
        self.decode_fn = decode_fn
        self.max_workers = max_workers

    def decode_many(self, vectors: Sequence[VectorFq], progress: bool = True) -> List[DecodeResult]:
        """
        Decode every vector, keeping the input order.

        Args:
            vectors: Received vectors
            progress: Show a tqdm progress bar

        Returns:
            One DecodeResult per vector
        """
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            results = executor.map(self.decode_fn, vectors)
            return list(tqdm(results, total=len(vectors), desc="Decoding", disable=not progress))


def decode_all(decode_fn: Callable[[VectorFq], DecodeResult], code: Code,
               threads: int = DEFAULT_THREADS, max_vectors: int = DEFAULT_MAX_CODEWORDS,
               progress: bool = True) -> List[DecodeResult]:
    """Decode every vector of F_q^n; results follow all_vectors order."""
    vectors = list(all_vectors(code, max_vectors))
    logger.info(f"Decoding {len(vectors)} vectors of {code} with {threads} threads")
    return DecoderPool(decode_fn, max_workers=threads).decode_many(vectors, progress=progress)


def summarize(results: Sequence[DecodeResult]) -> Dict[str, Any]:
    """
    Tally decoding outcomes.

    Args:
        results: Decoding results

    Returns:
        Corrected and too-many-errors counts plus corrected counts per error weight
    """
    corrected = [r for r in results if isinstance(r, Corrected)]
    by_weight: Dict[int, int] = {}
    for r in corrected:
        by_weight[r.error.weight] = by_weight.get(r.error.weight, 0) + 1
    return {
        "total": len(results),
        "corrected": len(corrected),
        "too_many_errors": len(results) - len(corrected),
        "corrected_by_weight": {str(w): by_weight[w] for w in sorted(by_weight)},
    }

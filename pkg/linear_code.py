"""
Linear Code Module

This module models a linear code C over GF(q) by its parity-check matrix,
computes syndromes, enumerates codewords and derives the weight
distribution, minimum distance and error-correcting capability. It also
reads and writes the JSON code-definition files.

The parity-check matrix is held as an n x (n-k) matrix H so that c*H = 0
exactly for codewords; definition files store its transpose, the usual
(n-k) x n block.
"""

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import DEFAULT_MAX_CODEWORDS
from errors import CapExceededError, DimensionError, FieldMismatchError, ParseError
from field import FieldSpec
from permutation import Permutation

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


def _as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _to_array(spec: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> np.ndarray:
    if len(rows) == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(rows, dtype=np.int64).reshape(len(rows), ncols)


def row_reduce(spec: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(q).

    Args:
        spec: Field of the entries
        rows: Matrix rows as element indices
        ncols: Number of columns (needed for empty matrices)

    Returns:
        Tuple of (rref array with zero rows dropped, pivot columns)
    """
    A = _to_array(spec, rows, ncols)
    if A.shape[0] == 0 or ncols == 0:
        return np.zeros((0, ncols), dtype=np.int64), []
    rref = spec.galois_field(A).row_reduce()
    pivots = [int(np.argmax(row != 0)) for row in rref if np.any(row)]
    return rref[: len(pivots)].view(np.ndarray).astype(np.int64), pivots


def rank(spec: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(row_reduce(spec, rows, ncols)[1])


def null_space(spec: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """
    Basis of the right null space {v : rows * v = 0}.

    Args:
        spec: Field of the entries
        rows: Matrix rows as element indices
        ncols: Number of columns

    Returns:
        Basis vectors, one per free column, in column order
    """
    rref, pivots = row_reduce(spec, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = spec.neg(int(rref[i, f]))
        basis.append(tuple(v))
    return tuple(basis)


def mat_mul(spec: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int, ncols: int) -> np.ndarray:
    """Matrix product over GF(q)."""
    left = _to_array(spec, A, inner)
    right = _to_array(spec, B, ncols)
    if left.shape[0] == 0 or inner == 0 or ncols == 0:
        return np.zeros((left.shape[0], ncols), dtype=np.int64)
    GF = spec.galois_field
    return (GF(left) @ GF(right)).view(np.ndarray).astype(np.int64)


@dataclass(frozen=True)
class VectorFq:
    """A vector of F_q^n, entries stored as element indices."""

    spec: FieldSpec
    entries: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if any(not 0 <= x < self.spec.q for x in self.entries):
            raise ParseError(f"Entries must lie in [0, {self.spec.q - 1}]: {self.entries}")

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "VectorFq":
        return cls(spec, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def weight(self) -> int:
        return sum(1 for x in self.entries if x)

    @property
    def support(self) -> Tuple[int, ...]:
        """1-based positions of the nonzero entries."""
        return tuple(i + 1 for i, x in enumerate(self.entries) if x)

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    def _check(self, other: "VectorFq") -> None:
        if other.spec != self.spec:
            raise FieldMismatchError(f"Cannot combine vectors over {self.spec} and {other.spec}")
        if other.n != self.n:
            raise DimensionError(f"Length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "VectorFq") -> "VectorFq":
        self._check(other)
        return VectorFq(self.spec, tuple(self.spec.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "VectorFq") -> "VectorFq":
        self._check(other)
        return VectorFq(self.spec, tuple(self.spec.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def permuted(self, sigma: Permutation) -> "VectorFq":
        """The vector with entry i moved to position sigma(i)."""
        return VectorFq(self.spec, sigma.apply_to_sequence(self.entries))

    def to_json(self) -> List[Any]:
        """Entries as residues (m = 1) or coefficient lists (m > 1)."""
        if self.spec.m == 1:
            return list(self.entries)
        return [list(self.spec.coeffs_of(x)) for x in self.entries]

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True)
class Syndrome:
    """Coset identifier v*H; compared by exact entry equality."""

    entries: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class Code:
    """A linear [n, k] code over GF(q) given by its parity-check matrix."""

    spec: FieldSpec
    n: int
    k: int
    H: Matrix
    G: Optional[Matrix] = None
    name: str = ""
    source: str = "H"

    def __post_init__(self):
        object.__setattr__(self, "H", _as_matrix(self.H))
        if self.G is not None:
            object.__setattr__(self, "G", _as_matrix(self.G))

        r = self.n - self.k
        if self.n < 1 or not 0 <= self.k <= self.n:
            raise DimensionError(f"Invalid code parameters n={self.n}, k={self.k}")
        if len(self.H) != self.n or any(len(row) != r for row in self.H):
            raise DimensionError(f"H must be {self.n} x {r}")
        if any(not 0 <= x < self.spec.q for row in self.H for x in row):
            raise ParseError(f"H entries must lie in [0, {self.spec.q - 1}]")
        if rank(self.spec, self.check_rows, self.n) != r:
            raise DimensionError(f"Parity-check matrix must have rank {r}")

        if self.G is not None:
            if len(self.G) != self.k or any(len(row) != self.n for row in self.G):
                raise DimensionError(f"G must be {self.k} x {self.n}")
            if rank(self.spec, self.G, self.n) != self.k:
                raise DimensionError(f"Generator matrix must have rank {self.k}")
            if mat_mul(self.spec, self.G, self.H, self.n, r).any():
                raise DimensionError("Generator and parity-check matrices are not orthogonal")

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def nvars(self) -> int:
        return self.n * self.spec.m

    @cached_property
    def check_rows(self) -> Matrix:
        """H in the (n-k) x n textbook orientation."""
        return tuple(tuple(self.H[i][j] for i in range(self.n)) for j in range(self.redundancy))

    @cached_property
    def generator(self) -> Matrix:
        """The given generator matrix, or one derived from H."""
        if self.G is not None:
            return self.G
        return null_space(self.spec, self.check_rows, self.n)

    @cached_property
    def _H_array(self) -> np.ndarray:
        return _to_array(self.spec, self.H, self.redundancy)

    def syndrome(self, v: VectorFq) -> Syndrome:
        return syndrome(self, v)

    def contains(self, v: VectorFq) -> bool:
        return syndrome(self, v).is_zero

    @cached_property
    def _codeword_array(self) -> np.ndarray:
        spec, k, n = self.spec, self.k, self.n
        if k == 0:
            return np.zeros((1, n), dtype=np.int64)
        messages = np.indices((spec.q,) * k).reshape(k, -1).T
        gen = _to_array(spec, self.generator, n)
        words = np.zeros((messages.shape[0], n), dtype=np.int64)
        for r in range(k):
            words = spec.add_table[words, spec.mul_table[messages[:, r][:, None], gen[r][None, :]]]
        return words

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}[{self.n},{self.k}] code over {self.spec}"


def syndrome(code: Code, v: VectorFq) -> Syndrome:
    """
    Syndrome v*H of a vector.

    Args:
        code: The code
        v: Vector of length n over the code's field

    Returns:
        The syndrome
    """
    if v.spec != code.spec:
        raise FieldMismatchError(f"Vector over {v.spec} used with code over {code.spec}")
    if v.n != code.n:
        raise DimensionError(f"Vector length {v.n} does not match code length {code.n}")

    spec = code.spec
    out = [0] * code.redundancy
    for i, x in enumerate(v.entries):
        if x:
            row = code.H[i]
            for j in range(code.redundancy):
                out[j] = spec.add(out[j], spec.mul(x, row[j]))
    return Syndrome(tuple(out))


def _check_codeword_cap(code: Code, max_codewords: int) -> None:
    total = code.q ** code.k
    if total > max_codewords:
        raise CapExceededError(
            f"{code} has {total} codewords, above the enumeration cap {max_codewords}"
        )


def codeword_array(code: Code, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> np.ndarray:
    """All codewords as a q^k x n array of element indices."""
    _check_codeword_cap(code, max_codewords)
    return code._codeword_array


def codewords(code: Code, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> List[VectorFq]:
    """
    Enumerate every codeword.

    Args:
        code: The code
        max_codewords: Enumeration cap

    Returns:
        List of the q^k codewords, zero word first
    """
    return [VectorFq(code.spec, tuple(row)) for row in codeword_array(code, max_codewords).tolist()]


def weight_distribution(code: Code, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> List[int]:
    weights = np.count_nonzero(codeword_array(code, max_codewords), axis=1)
    return np.bincount(weights, minlength=code.n + 1).tolist()


def minimum_distance(code: Code, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> int:
    """Least nonzero codeword weight; n + 1 when k = 0."""
    distribution = weight_distribution(code, max_codewords)
    return next((w for w in range(1, code.n + 1) if distribution[w]), code.n + 1)


def error_capability(code: Code, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> int:
    return (minimum_distance(code, max_codewords) - 1) // 2


def derive_parity_check(
    spec: FieldSpec, gen: Sequence[Sequence[int]], n: Optional[int] = None, name: str = ""
) -> Code:
    """
    Build a code from a generator matrix.

    The parity checks are a basis of the null space of the generator rows,
    read off its reduced row echelon form.

    Args:
        spec: Field of the entries
        gen: k x n generator matrix, possibly with no rows
        n: Code length; required when gen is empty
        name: Optional label

    Returns:
        Code with H of rank n-k and G*H = 0
    """
    gen = _as_matrix(gen)
    if n is None:
        if not gen:
            raise DimensionError("Length of a generator matrix with no rows is unknown")
        n = len(gen[0])
    if any(len(row) != n for row in gen):
        raise DimensionError("Generator rows differ in length")

    k = len(gen)
    if rank(spec, gen, n) != k:
        raise DimensionError(f"Generator matrix with {k} rows is rank deficient")

    checks = null_space(spec, gen, n)
    H = tuple(tuple(checks[j][i] for j in range(n - k)) for i in range(n))
    return Code(spec=spec, n=n, k=k, H=H, G=gen, name=name, source="G")


def derive_generator(code: Code) -> Matrix:
    """Generator matrix spanning the null space of the parity checks."""
    return null_space(code.spec, code.check_rows, code.n)


def same_code(a: Code, b: Code) -> bool:
    """True if both codes have the same codeword set."""
    if a.spec != b.spec or a.n != b.n or a.k != b.k:
        return False
    return all(b.contains(VectorFq(a.spec, row)) for row in a.generator)


def apply_permutation(code: Code, sigma: Permutation) -> Code:
    """
    The code sigma(C) = {sigma(y) : y in C}.

    Row i of H moves to row sigma(i); the generator columns move alike.

    Args:
        code: The code
        sigma: Permutation of 1..n

    Returns:
        The permuted code
    """
    if sigma.n != code.n:
        raise DimensionError(f"Permutation of {sigma.n} points applied to a length-{code.n} code")

    H = sigma.apply_to_sequence(code.H)
    G = None
    if code.G is not None:
        G = tuple(sigma.apply_to_sequence(row) for row in code.G)
    name = f"sigma({code.name})" if code.name else ""
    return Code(spec=code.spec, n=code.n, k=code.k, H=H, G=G, name=name, source=code.source)


# Definition-file codec

def _parse_entry(spec: FieldSpec, raw: Any) -> int:
    if isinstance(raw, bool):
        raise ParseError(f"Matrix entry must be a residue or coefficient list, got {raw!r}")
    if isinstance(raw, int):
        if spec.m != 1:
            raise ParseError(f"Entries over {spec} need {spec.m} coefficients, got {raw!r}")
        coeffs = [raw]
    elif isinstance(raw, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
        coeffs = raw
    else:
        raise ParseError(f"Matrix entry must be a residue or coefficient list, got {raw!r}")
    if len(coeffs) != spec.m:
        raise ParseError(f"Entries over {spec} need {spec.m} coefficients, got {raw!r}")
    return spec.index_of(coeffs)


def _parse_matrix(spec: FieldSpec, raw: Any, nrows: int, ncols: int, label: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != nrows:
        raise ParseError(f"{label} must be a list of {nrows} rows")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != ncols:
            raise ParseError(f"Every row of {label} must have {ncols} entries")
        rows.append(tuple(_parse_entry(spec, x) for x in row))
    return tuple(rows)


def code_from_dict(data: Dict[str, Any], name: str = "") -> Code:
    """
    Build a code from a parsed code-definition document.

    Args:
        data: Mapping with p, m, n, k, optional irreducible, and H or G
        name: Label used when the document carries none

    Returns:
        The code
    """
    if not isinstance(data, dict):
        raise ParseError("Code definition must be a JSON object")

    for key in ("p", "n", "k"):
        if not isinstance(data.get(key), int):
            raise ParseError(f"Code definition needs an integer '{key}'")
    if not isinstance(data.get("m", 1), int):
        raise ParseError("Field 'm' must be an integer")
    if ("H" in data) == ("G" in data):
        raise ParseError("Code definition needs exactly one of 'H' or 'G'")

    spec = FieldSpec(p=data["p"], m=data.get("m", 1), irreducible=data.get("irreducible"))
    n, k = data["n"], data["k"]
    if n < 1 or not 0 <= k <= n:
        raise DimensionError(f"Invalid code parameters n={n}, k={k}")
    label = data.get("name", name)

    if "G" in data:
        gen = _parse_matrix(spec, data["G"], k, n, "G")
        return derive_parity_check(spec, gen, n=n, name=label)

    rows = _parse_matrix(spec, data["H"], n - k, n, "H")
    H = tuple(tuple(rows[j][i] for j in range(n - k)) for i in range(n))
    return Code(spec=spec, n=n, k=k, H=H, name=label, source="H")


def code_to_dict(code: Code) -> Dict[str, Any]:
    """Inverse of code_from_dict for the matrix the code was defined by."""
    spec = code.spec
    doc: Dict[str, Any] = {}
    if code.name:
        doc["name"] = code.name
    doc.update({"p": spec.p, "m": spec.m, "n": code.n, "k": code.k})
    if spec.irreducible_given:
        doc["irreducible"] = list(spec.irreducible)

    def render(rows: Matrix) -> List[List[Any]]:
        if spec.m == 1:
            return [list(row) for row in rows]
        return [[list(spec.coeffs_of(x)) for x in row] for row in rows]

    if code.source == "G" and code.G is not None:
        doc["G"] = render(code.G)
    else:
        doc["H"] = render(code.check_rows)
    return doc


def load_code(path: Union[str, Path]) -> Code:
    """
    Read a code-definition file.

    Args:
        path: Path to the JSON file

    Returns:
        The code, named after the file stem unless the file names it
    """
    path = Path(path)
    if not path.is_file():
        raise ParseError(f"File not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from e

    code = code_from_dict(data, name=path.stem)
    logger.info(f"Loaded {code} from {path}")
    return code


def dump_code(code: Code, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code), indent=2) + "\n", encoding="utf-8")

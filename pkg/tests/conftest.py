"""Shared fixtures: the bundled code definitions, golden listings and random codes."""

import json
import random
from functools import lru_cache
from pathlib import Path
from typing import List

import pytest

from linear_code import Code, code_from_dict, load_code
from matphi import build_matphi
from monomial import AdmissibleOrder, Word
from rbasis import Binomial, build_reduced_basis

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@lru_cache(maxsize=None)
def fixture_code(name: str) -> Code:
    return load_code(FIXTURES / f"{name}.json")


@lru_cache(maxsize=None)
def fixture_basis(name: str):
    return build_reduced_basis(fixture_code(name))


@lru_cache(maxsize=None)
def fixture_matphi(name: str, kind: str = "drl"):
    code = fixture_code(name)
    return build_matphi(code, AdmissibleOrder.natural(kind, code.nvars))


def golden(name: str) -> list:
    return json.loads((GOLDEN / f"{name}.json").read_text(encoding="utf-8"))


def golden_words(name: str, nvars: int, m: int = 1) -> List[Word]:
    return [Word.parse(text, nvars, m) for text in golden(name)]


def golden_binomials(name: str, nvars: int, m: int = 1) -> List[Binomial]:
    return [Binomial.parse(text, nvars, m) for text in golden(name)]


def word(text: str, nvars: int, m: int = 1) -> Word:
    return Word.parse(text, nvars, m)


def pairs(binomials) -> set:
    return {(b.head, b.tail) for b in binomials}


def random_code(rng: random.Random, n: int, r: int, p: int = 2, name: str = "") -> Code:
    """
    A random [n, n-r] code over GF(p) with a full-rank parity-check matrix.

    The check rows are [A | I] with random A, columns shuffled afterwards.
    """
    columns = list(range(n))
    rng.shuffle(columns)
    rows = []
    for j in range(r):
        row = [rng.randrange(p) for _ in range(n - r)] + [1 if i == j else 0 for i in range(r)]
        rows.append([row[columns[i]] for i in range(n)])
    return code_from_dict({"p": p, "n": n, "k": n - r, "H": rows}, name=name)


def random_word(rng: random.Random, nvars: int, m: int = 1, top: int = 3, density: float = 0.4) -> Word:
    exponents = [rng.randint(1, top) if rng.random() < density else 0 for _ in range(nvars)]
    return Word(tuple(exponents), m)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(scope="session")
def cf2():
    return fixture_code("cf2")


@pytest.fixture(scope="session")
def cf3():
    return fixture_code("cf3")


@pytest.fixture(scope="session")
def cf4():
    return fixture_code("cf4")


@pytest.fixture(scope="session")
def c1():
    return fixture_code("c1")


@pytest.fixture(scope="session")
def c2():
    return fixture_code("c2")


@pytest.fixture(scope="session")
def example1():
    return fixture_code("example1")


@pytest.fixture(scope="session")
def sigma_cf2_1():
    return fixture_code("sigma_cf2_1")


@pytest.fixture(scope="session")
def sigma_cf2_2():
    return fixture_code("sigma_cf2_2")

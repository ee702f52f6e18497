import random

import pytest

from errors import CharacteristicError, DimensionError, ParseError
from linear_code import apply_permutation, code_from_dict
from matphi import build_matphi, canonical_form_cf
from monomial import AdmissibleOrder, Word, xi
from permutation import Permutation
from rbasis import (
    Binomial,
    Canonical,
    CycleDetected,
    StepLimit,
    build_reduced_basis,
    canonical_form_binary,
    reduce_once_binary,
    reduce_step,
    reduce_traced,
    reduces_to_zero,
)
from tests.conftest import fixture_basis, fixture_code, golden_binomials, golden_words, pairs, random_code, random_word, word

GOLDEN_BASES = [
    ("cf2", "cf2_G", 10, 1, 46),
    ("cf3", "cf3_G", 7, 1, 42),
    ("cf4", "cf4_G", 10, 2, 41),
    ("sigma_cf2_1", "sigma_cf2_1_G", 10, 1, 46),
    ("sigma_cf2_2", "sigma_cf2_2_G", 10, 1, 45),
]


@pytest.mark.parametrize("name,listing,nvars,m,size", GOLDEN_BASES)
def test_reduced_basis_matches_listing(name, listing, nvars, m, size):
    basis = fixture_basis(name)
    assert len(basis) == size
    assert len(basis.N) == (81 if name == "cf3" else 64)
    assert pairs(basis.binomials) == pairs(golden_binomials(listing, nvars, m))


def test_cf2_listing_order_and_indices():
    basis = fixture_basis("cf2")
    assert list(basis.binomials) == golden_binomials("cf2_G", 10)
    assert str(basis.binomials[8]) == "x9^2 - 1"
    assert str(basis.binomials[20]) == "x5*x7 - x1*x3"
    assert str(basis.binomials[25]) == "x2*x3*x4 - x9*x10"
    assert str(basis.binomials[44]) == "x1*x2*x3*x8 - x5*x9*x10"


def test_cubes_and_indices_over_gf3():
    basis = fixture_basis("cf3")
    cubes = [b for b in basis.binomials if b.tail.is_one]
    assert [str(b.head) for b in cubes] == [f"x{i}^3" for i in range(1, 8)]
    assert str(basis.binomials[9]) == "x3*x7 - x1*x5"
    assert str(basis.binomials[33]) == "x1*x5*x7 - x3*x7^2"


def test_gf4_binomial_indices():
    basis = fixture_basis("cf4")
    assert str(basis.binomials[22]) == "x6*x7 - x1*x10"
    assert str(basis.binomials[34]) == "x1*x8*x10 - x6*x7*x8"
    assert str(basis.binomials[36]) == "x2*x4*x7 - x6*x7*x8"
    assert Binomial.parse("x1*x7*x9 - x3*x4*x10", 10, 2) in basis.binomials


def test_isospectral_pair_bases():
    g1 = fixture_basis("c1")
    g2 = fixture_basis("c2")
    assert {str(b) for b in g1.binomials} == {
        "x2 - x1", "x4 - x3", "x6 - x5", "x1^2 - 1", "x3^2 - 1", "x5^2 - 1",
    }
    assert {str(b) for b in g2.binomials} == {
        "x3 - x1", "x5 - x1", "x1^2 - 1", "x2^2 - 1", "x4^2 - 1", "x6^2 - 1",
        "x2*x4 - x1*x6", "x2*x6 - x1*x4", "x4*x6 - x1*x2",
    }
    assert [str(w) for w in g1.N] == ["1", "x1", "x3", "x5", "x1*x3", "x1*x5", "x3*x5", "x1*x3*x5"]


def test_basis_and_table_share_canonical_forms():
    for name in ("cf2", "cf3", "cf4", "c2"):
        code = fixture_code(name)
        assert fixture_basis(name).N == build_matphi(code).words


def test_export_groups_by_level():
    doc = fixture_basis("c2").to_dict()
    assert [group["level"] for group in doc["G"]] == [1, 2]
    assert doc["G"][0]["binomials"][0] == ["x3", "x1"]
    assert doc["t"] == 0
    assert len(doc["N"]) == 8


def test_reduction_chains_over_gf2():
    basis = fixture_basis("cf2")
    trace = reduce_traced(basis, word("x1*x2*x3*x7*x8*x9", 10))
    assert [step.binomial for step in trace.steps] == [45, 9, 21]
    assert trace.outcome == Canonical(word("x1*x3*x10", 10))

    trace = reduce_traced(basis, word("x1*x2*x3*x4*x9*x10", 10))
    assert [step.binomial for step in trace.steps] == [26, 9, 10]
    assert trace.outcome == Canonical(word("x1", 10))


def test_two_cycle_over_gf3():
    basis = fixture_basis("cf3")
    trace = reduce_traced(basis, word("x1*x5*x7", 7))
    assert [str(w) for w in trace.words] == ["x1*x5*x7", "x3*x7^2", "x1*x5*x7"]
    assert [step.binomial for step in trace.steps] == [34, 10]
    assert trace.outcome == CycleDetected(0, (word("x1*x5*x7", 7), word("x3*x7^2", 7), word("x1*x5*x7", 7)))
    assert trace.to_dict()["outcome"]["cycle_start"] == 0


def test_three_cycle_over_gf4():
    basis = fixture_basis("cf4")
    trace = reduce_traced(basis, word("x2*x4*x7", 10, 2))
    assert [step.binomial for step in trace.steps] == [37, 23, 35]
    assert isinstance(trace.outcome, CycleDetected)
    assert trace.outcome.start == 1
    assert [str(w) for w in trace.outcome.cycle] == ["x6*x7*x8", "x1*x8*x10", "x6*x7*x8"]


def test_step_limit():
    basis = fixture_basis("cf3")
    trace = reduce_traced(basis, word("x1*x5*x7", 7), limit=1)
    assert trace.outcome == StepLimit(word("x3*x7^2", 7), 1)


def test_irreducible_word_has_no_step():
    basis = fixture_basis("cf2")
    w = word("x1*x3*x10", 10)
    assert reduce_step(basis, w) is None
    assert reduce_once_binary(basis, w) is None
    assert reduce_traced(basis, w).outcome == Canonical(w)


def test_binary_reduction_needs_gf2():
    with pytest.raises(CharacteristicError):
        canonical_form_binary(fixture_basis("cf3"), word("x1", 7))
    with pytest.raises(CharacteristicError):
        canonical_form_binary(fixture_basis("cf4"), word("x1", 10, 2))


def test_word_arity_checked():
    with pytest.raises(DimensionError):
        canonical_form_binary(fixture_basis("cf2"), word("x1", 6))


def test_binomial_parse():
    b = Binomial.parse("x2*x5 - x1*x6", 10)
    assert b.level == 2
    assert str(b) == "x2*x5 - x1*x6"
    with pytest.raises(ParseError):
        Binomial.parse("x1 + x2", 10)


@pytest.mark.parametrize("seed", range(50))
def test_random_basis_structure(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    r = rng.randint(1, min(6, n - 1))
    code = random_code(rng, n, r)
    basis = build_reduced_basis(code)
    table = build_matphi(code)

    assert len(basis.N) == 2 ** r
    members = set(basis.N)
    heads = basis.heads

    for i, h in enumerate(heads):
        assert h not in members
        assert all(not g.divides(h) for j, g in enumerate(heads) if j != i)
    for b in basis.binomials:
        assert b.tail in members
        assert xi(code, b.head) == xi(code, b.tail)

    for w in basis.N:
        for var in range(basis.nvars):
            successor = w.times(var)
            assert successor in members or any(h.divides(successor) for h in heads)

    for w in (random_word(rng, basis.nvars) for _ in range(50)):
        assert canonical_form_binary(basis, w) == canonical_form_cf(table, w)


@pytest.mark.parametrize("seed", range(50))
def test_reduction_is_confluent(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    code = random_code(rng, n, rng.randint(1, min(6, n - 1)))
    basis = build_reduced_basis(code)
    table = build_matphi(code)

    # two independent random choices of the reducing binomial at every step
    first, second = random.Random(1000 + seed), random.Random(2000 + seed)
    for _ in range(1000):
        w = random_word(rng, basis.nvars)
        expected = canonical_form_cf(table, w)
        assert canonical_form_binary(basis, w) == expected
        assert canonical_form_binary(basis, w, first) == expected
        assert canonical_form_binary(basis, w, second) == expected


@pytest.mark.parametrize("seed", range(5))
def test_basis_independent_of_parity_check_rows(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(5, 9)
    r = rng.randint(2, min(5, n - 1))
    code = random_code(rng, n, r)
    rows = [list(row) for row in code.check_rows]
    i, j = rng.sample(range(r), 2)
    rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[j])]
    rows.reverse()
    again = code_from_dict({"p": 2, "n": n, "k": n - r, "H": rows})

    g1, g2 = build_reduced_basis(code), build_reduced_basis(again)
    assert g1.N == g2.N
    assert g1.binomials == g2.binomials
    assert build_matphi(code).phi == build_matphi(again).phi


def test_permuted_order_build_reproduces_listing():
    cf2 = fixture_code("cf2")
    sigma = Permutation.parse("(1,10,2,7,9,6,4,3,5)", 10)
    order = AdmissibleOrder.natural("drl", 10).permuted(sigma)
    basis = build_reduced_basis(apply_permutation(cf2, sigma), order)
    assert list(basis.N) == golden_words("sigma_cf2_1_Nstar", 10)
    assert pairs(basis.binomials) == pairs(golden_binomials("sigma_cf2_1_Gstar", 10))


def test_binomials_reduce_to_zero():
    basis = fixture_basis("cf2")
    for b in basis.binomials:
        assert reduces_to_zero(basis, b)
    assert not reduces_to_zero(basis, Binomial(word("x1", 10), Word.one(10)))

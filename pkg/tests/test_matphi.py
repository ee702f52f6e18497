import random

import pytest

from errors import CapExceededError, DimensionError
from linear_code import apply_permutation
from matphi import Worklist, build_matphi, canonical_form_cf, cf_index, coset_level_slice, walk_cosets
from monomial import AdmissibleOrder, Word, level, psi, xi
from permutation import Permutation
from tests.conftest import fixture_matphi, golden_words, random_code, word

EXAMPLE1_PHI = [
    [2, 3, 4, 5, 6, 7],
    [1, 6, 5, 4, 3, 8],
    [6, 1, 8, 7, 2, 5],
    [5, 8, 1, 2, 7, 6],
    [4, 7, 2, 1, 8, 3],
    [3, 2, 7, 8, 1, 4],
    [8, 5, 6, 3, 4, 1],
    [7, 4, 3, 6, 5, 2],
]

EXAMPLE1_SIGMA_PHI = [
    [2, 3, 4, 5, 6, 7],
    [1, 7, 5, 4, 8, 3],
    [7, 1, 8, 6, 5, 2],
    [5, 8, 1, 2, 7, 6],
    [4, 6, 2, 1, 3, 8],
    [8, 5, 7, 3, 1, 4],
    [3, 2, 6, 8, 4, 1],
    [6, 4, 3, 7, 2, 5],
]

C1_PHI = [
    [2, 2, 3, 3, 4, 4],
    [1, 1, 5, 5, 6, 6],
    [5, 5, 1, 1, 7, 7],
    [6, 6, 7, 7, 1, 1],
    [3, 3, 2, 2, 8, 8],
    [4, 4, 8, 8, 2, 2],
    [8, 8, 4, 4, 3, 3],
    [7, 7, 6, 6, 5, 5],
]

C2_PHI = [
    [2, 3, 2, 4, 2, 5],
    [1, 6, 1, 7, 1, 8],
    [6, 1, 6, 8, 6, 7],
    [7, 8, 7, 1, 7, 6],
    [8, 7, 8, 6, 8, 1],
    [3, 2, 3, 5, 3, 4],
    [4, 5, 4, 2, 4, 3],
    [5, 4, 5, 3, 5, 2],
]


def one_based(table):
    return [[j + 1 for j in row] for row in table.phi]


def test_example1_table_in_lex():
    table = fixture_matphi("example1", "lex")
    assert [str(w) for w in table.words] == ["1", "x1", "x2", "x3", "x4", "x5", "x6", "x2*x3"]
    assert one_based(table) == EXAMPLE1_PHI
    assert table.t == 1
    assert table.flags == (True,) * 7 + (False,)


def test_example1_permuted_code(example1):
    sigma = Permutation.parse("(5,6)", 6)
    permuted = apply_permutation(example1, sigma)
    table = build_matphi(permuted, AdmissibleOrder.natural("lex", 6))
    assert one_based(table) == EXAMPLE1_SIGMA_PHI
    assert cf_index(table, word("x1*x5", 6)) == 7


def test_isospectral_pair_tables():
    t1 = fixture_matphi("c1")
    t2 = fixture_matphi("c2")
    assert one_based(t1) == C1_PHI
    assert one_based(t2) == C2_PHI
    assert [str(w) for w in t2.words] == ["1", "x1", "x2", "x4", "x6", "x1*x2", "x1*x4", "x1*x6"]
    assert t1.t == t2.t == 0
    assert t1.flags == (True,) + (False,) * 7


@pytest.mark.parametrize("name", ["cf2", "sigma_cf2_1", "sigma_cf2_2"])
def test_canonical_forms_in_listing_order(name):
    table = fixture_matphi(name)
    assert list(table.words) == golden_words(f"{name}_N", 10)


@pytest.mark.parametrize("name,nvars,m", [("cf3", 7, 1), ("cf4", 10, 2)])
def test_canonical_forms_as_sets(name, nvars, m):
    table = fixture_matphi(name)
    assert set(table.words) == set(golden_words(f"{name}_N", nvars, m))


def test_canonical_forms_of_cycling_words():
    cf3 = fixture_matphi("cf3")
    assert str(canonical_form_cf(cf3, word("x1*x5*x7", 7))) == "x3*x7^2"
    cf4 = fixture_matphi("cf4")
    assert str(canonical_form_cf(cf4, word("x2*x4*x7", 10, 2))) == "x6*x7*x8"


def test_level_slices():
    table = fixture_matphi("cf2")
    assert [str(w) for w in coset_level_slice(table, 1)] == [f"x{i}" for i in range(1, 11)]
    assert coset_level_slice(table, 0) == [Word.one(10)]
    assert len(coset_level_slice(table, 4)) == 0


def test_export_is_one_based():
    doc = fixture_matphi("c1").to_dict()
    assert doc["N"][4] == "x1*x3"
    assert doc["matphi"][0] == {"vector": [0, 0, 0, 0, 0, 0], "flag": 1, "phi_row": [2, 2, 3, 3, 4, 4]}
    assert doc["t"] == 0
    assert doc["order"] == {"kind": "drl", "variable_order": [1, 2, 3, 4, 5, 6]}


def test_export_over_extension_field():
    doc = fixture_matphi("cf4").to_dict()
    assert len(doc["matphi"]) == 64
    assert all(len(entry["vector"]) == 5 and len(entry["vector"][0]) == 2 for entry in doc["matphi"])


def test_form_cap(cf2):
    with pytest.raises(CapExceededError):
        build_matphi(cf2, max_forms=63)


def test_order_arity_checked(cf2):
    with pytest.raises(DimensionError):
        build_matphi(cf2, AdmissibleOrder.natural("drl", 5))


def test_worklist_drops_duplicates():
    worklist = Worklist(AdmissibleOrder.natural("drl", 3))
    assert worklist.insert(word("x1*x2", 3))
    assert not worklist.insert(word("x1*x2", 3))
    worklist.insert(word("x3", 3))
    assert len(worklist) == 2
    assert worklist.next_term() == word("x3", 3)


def test_walk_visits_in_increasing_order(cf3):
    order = AdmissibleOrder.natural("drl", cf3.nvars)
    keys = [(level(v.word), order.key(v.word)) for v in walk_cosets(cf3, order)]
    assert keys == sorted(keys)


@pytest.mark.parametrize("seed", range(50))
def test_random_code_tables(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    r = rng.randint(1, min(6, n - 1))
    code = random_code(rng, n, r)
    table = build_matphi(code)

    assert len(table) == 2 ** r
    assert table.words[0].is_one
    syndromes = [xi(code, w) for w in table.words]
    assert len(set(syndromes)) == len(syndromes)

    members = set(table.words)
    for w in table.words:
        for var in w.support:
            assert w.over(var) in members

    for i, w in enumerate(table.words):
        for var in range(table.nvars):
            assert syndromes[table.phi[i][var]] == xi(code, w.times(var))

    for w, v, flag in zip(table.words, table.vectors, table.flags):
        assert v == psi(code, w)
        assert flag == (v.weight <= table.t)


def test_gf3_table_closure(cf3):
    table = fixture_matphi("cf3")
    assert len(table) == 81
    for i, w in enumerate(table.words):
        for var in range(table.nvars):
            assert xi(cf3, table.words[table.phi[i][var]]) == xi(cf3, w.times(var))

import json

import pytest

from errors import CapExceededError, DimensionError, FieldMismatchError, ParseError
from field import FieldSpec
from linear_code import (
    Code,
    VectorFq,
    apply_permutation,
    code_from_dict,
    code_to_dict,
    codewords,
    derive_generator,
    derive_parity_check,
    dump_code,
    error_capability,
    load_code,
    minimum_distance,
    null_space,
    rank,
    same_code,
    weight_distribution,
)
from matphi import build_matphi
from permutation import Permutation
from tests.conftest import FIXTURES


def test_fixture_parameters(cf2, cf3, cf4, c1):
    assert (cf2.n, cf2.k, cf2.q) == (10, 4, 2)
    assert (cf3.n, cf3.k, cf3.q) == (7, 3, 3)
    assert (cf4.n, cf4.k, cf4.q, cf4.nvars) == (5, 2, 4, 10)
    assert cf2.name == "CF2"
    assert str(c1) == "C1 [6,3] code over GF(2)"


def test_isospectral_pair(c1, c2):
    assert weight_distribution(c1) == [1, 0, 3, 0, 3, 0, 1]
    assert weight_distribution(c2) == [1, 0, 3, 0, 3, 0, 1]
    assert error_capability(c1) == 0


def test_distances(cf2, cf3, example1):
    assert weight_distribution(cf2) == [1, 0, 0, 0, 6, 4, 0, 4, 1, 0, 0]
    assert minimum_distance(cf2) == 4
    assert error_capability(cf2) == 1
    assert minimum_distance(cf3) == 3
    assert error_capability(example1) == 1


def test_codewords_have_zero_syndrome(cf3, cf4):
    for code in (cf3, cf4):
        words = codewords(code)
        assert len(words) == code.q ** code.k
        assert words[0].is_zero
        assert all(code.contains(w) for w in words)
        assert len(set(words)) == len(words)


def test_generator_matrix_from_g(example1):
    assert example1.source == "G"
    assert example1.generator == ((1, 0, 0, 1, 1, 1), (0, 1, 0, 1, 0, 1), (0, 0, 1, 0, 1, 1))
    assert all(example1.contains(VectorFq(example1.spec, row)) for row in example1.generator)


def test_derive_generator_spans_code(cf4):
    gen = derive_generator(cf4)
    assert len(gen) == cf4.k
    assert rank(cf4.spec, gen, cf4.n) == cf4.k
    assert all(cf4.contains(VectorFq(cf4.spec, row)) for row in gen)


def test_null_space_over_gf3():
    spec = FieldSpec(3)
    rows = ((1, 2, 0), (0, 1, 1))
    (v,) = null_space(spec, rows, 3)
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) % 3 == 0


def test_permuted_fixture_is_sigma_image(cf2, sigma_cf2_1, sigma_cf2_2):
    sigma1 = Permutation.parse("(1,10,2,7,9,6,4,3,5)", 10)
    sigma2 = Permutation.parse("(1,2,6,9,10,4,5,3,7,8)", 10)
    assert same_code(apply_permutation(cf2, sigma1), sigma_cf2_1)
    assert same_code(apply_permutation(cf2, sigma2), sigma_cf2_2)
    assert not same_code(cf2, sigma_cf2_1)


def test_apply_permutation_moves_codewords(cf3, rng):
    images = list(range(1, cf3.n + 1))
    rng.shuffle(images)
    sigma = Permutation(tuple(images))
    moved = apply_permutation(cf3, sigma)
    for w in codewords(cf3):
        assert moved.contains(w.permuted(sigma))


def test_syndrome_checks_operands(cf2, cf3):
    with pytest.raises(DimensionError):
        cf2.syndrome(VectorFq(cf2.spec, (1, 0, 1)))
    with pytest.raises(FieldMismatchError):
        cf2.syndrome(VectorFq.zero(cf3.spec, 10))


def test_rejects_rank_deficient_parity_check():
    with pytest.raises(DimensionError):
        code_from_dict({"p": 2, "n": 3, "k": 1, "H": [[1, 1, 0], [1, 1, 0]]})


@pytest.mark.parametrize("doc", [
    {"p": 2, "n": 3, "H": [[1, 1, 0]]},
    {"p": 2, "n": 3, "k": 2},
    {"p": 2, "n": 3, "k": 2, "H": [[1, 1, 0]], "G": [[1, 1, 0]]},
    {"p": 2, "n": 3, "k": 2, "H": [[1, 2, 0]]},
    {"p": 2, "n": 3, "k": 2, "H": [[1, 1]]},
    {"p": 2, "m": 2, "n": 2, "k": 1, "H": [[1, 0]]},
    {"p": 2, "m": "2", "n": 2, "k": 1, "H": [[1, 0]]},
    {"p": 2, "n": 2, "k": 1, "H": [[True, 0]]},
])
def test_rejects_malformed_definitions(doc):
    with pytest.raises(ParseError):
        code_from_dict(doc)


def test_definition_round_trip(tmp_path, cf4, example1):
    for code in (cf4, example1):
        path = tmp_path / f"{code.name}.json"
        dump_code(code, path)
        again = load_code(path)
        assert same_code(code, again)
        assert code_to_dict(again) == json.loads(path.read_text())
    assert "irreducible" in code_to_dict(cf4)
    assert "G" in code_to_dict(example1)


def test_load_code_errors(tmp_path):
    with pytest.raises(ParseError):
        load_code(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ParseError):
        load_code(broken)


def test_every_fixture_loads():
    names = sorted(path.stem for path in FIXTURES.glob("*.json"))
    assert names == ["c1", "c2", "cf2", "cf3", "cf4", "example1", "sigma_cf2_1", "sigma_cf2_2"]
    for name in names:
        assert isinstance(load_code(FIXTURES / f"{name}.json"), Code)


def test_codeword_cap(cf2):
    with pytest.raises(CapExceededError):
        weight_distribution(cf2, max_codewords=8)


def test_derive_parity_check_rejects_dependent_rows():
    with pytest.raises(DimensionError):
        derive_parity_check(FieldSpec(2), [[1, 1, 0], [1, 1, 0]])


def test_zero_dimensional_code_from_generator():
    code = code_from_dict({"p": 2, "n": 3, "k": 0, "G": []})
    assert (code.n, code.k) == (3, 0)
    assert code.H == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert list(codewords(code)) == [VectorFq.zero(code.spec, 3)]
    assert len(build_matphi(code).N) == 8

    identity = code_from_dict({"p": 2, "n": 3, "k": 0, "H": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    assert same_code(code, identity)
    assert len(build_matphi(identity).N) == 8

    with pytest.raises(DimensionError):
        derive_parity_check(FieldSpec(2), [])


def test_default_polynomial_is_not_written_back(cf4):
    doc = code_to_dict(cf4)
    del doc["irreducible"]
    again = code_from_dict(doc)
    assert same_code(cf4, again)
    assert "irreducible" not in code_to_dict(again)
    assert code_to_dict(again) == doc

import pytest

from errors import DimensionError, ParseError
from permutation import Permutation


def test_parse_cycle_notation():
    sigma = Permutation.parse("(1,10,2,7,9,6,4,3,5)", 10)
    assert sigma(1) == 10
    assert sigma(10) == 2
    assert sigma(5) == 1
    assert sigma(8) == 8
    assert sigma.cycle_notation() == "(1,10,2,7,9,6,4,3,5)"


def test_parse_list_notation():
    sigma = Permutation.parse("[1,3,4,9,10,8,7,5,2,6]", 10)
    assert sigma.to_list() == [1, 3, 4, 9, 10, 8, 7, 5, 2, 6]
    assert Permutation.parse("1,3,4,9,10,8,7,5,2,6", 10) == sigma
    assert str(sigma) == "[1,3,4,9,10,8,7,5,2,6]"


def test_identity_literal():
    assert Permutation.parse("()", 4).is_identity
    assert Permutation.identity(4).cycle_notation() == "()"


def test_inverse_and_compose():
    sigma = Permutation.parse("(1,2,3)(4,5)", 6)
    assert (sigma * sigma.inverse()).is_identity
    tau = Permutation.parse("(1,6)", 6)
    composed = sigma.compose(tau)
    assert all(composed(i) == sigma(tau(i)) for i in range(1, 7))


def test_apply_to_sequence_moves_item_to_image():
    sigma = Permutation((2, 3, 1))
    assert sigma.apply_to_sequence(["a", "b", "c"]) == ("c", "a", "b")


@pytest.mark.parametrize("text,n", [("(1,2)(2,3)", 3), ("(1,4)", 3), ("[1,1,2]", 3), ("(1,x)", 3), ("", 2)])
def test_parse_rejects_malformed(text, n):
    with pytest.raises(ParseError):
        Permutation.parse(text, n)


def test_list_notation_length():
    with pytest.raises(DimensionError):
        Permutation.parse("[2,1]", 3)

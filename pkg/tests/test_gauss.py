import pytest
from hypothesis import given

from knotgroups.gauss import GaussCodeError, Parity, parities, parity_of, parse_gauss, serialize_gauss

from conftest import marked_codes


def test_letter_code_parities():
    code = parse_gauss("abcacb")
    assert parity_of(code, "a") is Parity.EVEN
    assert parity_of(code, "b") is Parity.ODD
    assert parity_of(code, "c") is Parity.ODD


def test_classical_trefoil_is_all_even():
    code = parse_gauss("O1+,U2+,O3+,U1+,O2+,U3+")
    assert set(parities(code).values()) == {Parity.EVEN}
    assert code.fully_marked and code.n_crossings == 3


def test_virtual_trefoil_is_all_odd():
    assert set(parities(parse_gauss("O1+,O2+,U1+,U2+")).values()) == {Parity.ODD}


@pytest.mark.parametrize(
    "text",
    ["O1+,U1+,O2+", "O1+,O1+", "U1+,U1+", "O1+,U1-", "O1+,U1+,2+,2+", "O1+,U1+,O2,U2", "Q1+"],
)
def test_malformed_codes_rejected(text):
    with pytest.raises(GaussCodeError):
        parse_gauss(text)


def test_labels_are_relabelled_in_first_occurrence_order():
    code = parse_gauss("O7-,U3+,U7-,O3+")
    assert serialize_gauss(code) == "O1-,U2+,U1-,O2+"
    assert code.tokens == ("7", "3")


@given(marked_codes())
def test_round_trip(code):
    again = parse_gauss(serialize_gauss(code))
    assert again.passes == code.passes
    assert serialize_gauss(again) == serialize_gauss(code)


@given(marked_codes())
def test_odd_count_is_even(code):
    # the odd crossings of a one-component code come in pairs
    odd = sum(1 for p in parities(code).values() if p is Parity.ODD)
    assert odd % 2 == 0


def test_letter_code_round_trip():
    assert serialize_gauss(parse_gauss("abcacb")) == "abcacb"

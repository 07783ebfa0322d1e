import pytest
from hypothesis import given, strategies as st

from knotgroups.words import (
    IDENTITY,
    AutomorphismError,
    Word,
    automorphism_from_json,
    commutes,
    compose,
    from_images,
    identity,
    inner,
    parse_word,
)

from conftest import words


def naive_reduce(letters):
    out = []
    for g, e in letters:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from((1, -1))), max_size=20))
def test_reduction_matches_stack_reduction(letters):
    assert Word.from_letters(letters).letters == naive_reduce(letters)


@given(words(), words(), words())
def test_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * u.inverse() == IDENTITY
    assert u.inverse().inverse() == u
    assert (u * v).inverse() == v.inverse() * u.inverse()


@given(words())
def test_text_round_trip(w):
    assert parse_word(w.to_text()) == w
    names = ["a", "b", "c"]
    assert parse_word(w.to_text(names), names) == w


@given(words())
def test_cyclic_reduction_is_conjugate_and_reduced(w):
    c = w.cyclically_reduced()
    assert len(c) <= len(w)
    if len(c) > 1:
        assert c.letters[0] != (c.letters[-1][0], -c.letters[-1][1])


def test_parse_powers():
    assert parse_word("x0^3 x0^-1") == Word.gen(0, 2)
    assert parse_word("1") == IDENTITY
    with pytest.raises(ValueError):
        parse_word("y7")


@given(words(rank=3), words(rank=3), words(rank=3))
def test_inner_is_homomorphism_and_inverse(s, u, v):
    f = inner(3, s)
    assert f(u * v) == f(u) * f(v)
    assert f.inverse()(f(u)) == u
    assert f(u) == s * u * s.inverse()


@given(words(rank=2), words(rank=2))
def test_compose_applies_right_first(s, t):
    f, g = inner(2, s), inner(2, t)
    w = Word.gen(0)
    assert compose(f, g)(w) == f(g(w))


def test_commutes_detects_noncommuting_pair():
    f, g = inner(2, 0), inner(2, 1)
    assert commutes(f, identity(2))
    assert not commutes(f, g)
    assert commutes(f, inner(2, Word.gen(0, 2)))


def test_bad_inverse_table_rejected():
    with pytest.raises(AutomorphismError):
        from_images(2, {0: Word.gen(0, 2)}, {0: Word.gen(0)})


def test_transvection_from_json():
    spec = {"rank": 2, "images": {"x0": "x0 x1"}, "inverse_images": {"x0": "x0 x1^-1"}}
    f = automorphism_from_json(spec)
    assert f(Word.gen(0)) == parse_word("x0 x1")
    assert automorphism_from_json({"rank": 2, "inner_by": "x1"}) == inner(2, 1)

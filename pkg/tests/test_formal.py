import itertools

import pytest
from hypothesis import given, strategies as st

from knotgroups.formal import (
    NO_DECLS,
    CommutationDecl,
    FormalError,
    FormalWord,
    equal,
    evaluate,
    normalize,
    parse_formal,
)
from knotgroups.proofs import transvection
from knotgroups.words import Word, commutes, compose, identity, parse_word

SYMBOLS = ("theta", "phi", "eta")
ops = st.lists(st.tuples(st.sampled_from(SYMBOLS), st.sampled_from((1, -1))), max_size=3).map(tuple)
letters = st.tuples(ops, st.sampled_from("abc"), st.sampled_from((1, -1)))
formal_words = st.lists(letters, max_size=6).map(lambda ls: FormalWord(tuple(ls)))

RANK = 4
T01, T23, T10 = transvection(RANK, 0, 1), transvection(RANK, 2, 3), transvection(RANK, 1, 0)
CONCRETE = (T01, T23, T10, compose(T01, T01), compose(T01, T23), identity(RANK))
VALUES = {"a": parse_word("x0 x2"), "b": parse_word("x1^-1 x3"), "c": parse_word("x2 x0^-1 x1")}

declared = st.sets(st.sampled_from([frozenset(p) for p in itertools.combinations(SYMBOLS, 2)]))


@given(formal_words)
def test_text_round_trip(w):
    assert parse_formal(w.to_text()) == w


@given(formal_words, declared)
def test_normalize_is_idempotent(w, pairs):
    decls = CommutationDecl(frozenset(pairs))
    n = normalize(w, decls)
    assert normalize(n, decls) == n


@given(formal_words, st.tuples(*[st.sampled_from(range(len(CONCRETE)))] * 3), declared)
def test_normal_form_is_sound_for_commuting_models(w, picks, pairs):
    model = {s: CONCRETE[i] for s, i in zip(SYMBOLS, picks)}
    # declare only pairs the model really commutes
    pairs = {p for p in pairs if commutes(*(model[s] for s in p))}
    decls = CommutationDecl(frozenset(pairs))
    assert evaluate(normalize(w, decls), model, VALUES) == evaluate(w, model, VALUES)


@given(formal_words, formal_words)
def test_free_normal_form_separates_under_free_model(u, v):
    # without declarations the lex-least form is just free reduction of operator strings
    model = {"theta": T01, "phi": T10, "eta": T23}
    if evaluate(u, model, VALUES) != evaluate(v, model, VALUES):
        assert not equal(u, v)


def test_declared_commutation_swaps_operators():
    u = parse_formal("theta(phi(a))")
    v = parse_formal("phi(theta(a))")
    assert not equal(u, v)
    assert equal(u, v, CommutationDecl.of([("theta", "phi")]))


def test_r3_even_equations_differ_for_noncommuting_maps():
    lhs = parse_formal("a b^-1 c theta(phi(b a^-1))")
    rhs = parse_formal("a b^-1 c phi(theta(b a^-1))")
    model = {"theta": T01, "phi": T10, "eta": identity(RANK)}
    assert not commutes(T01, T10)
    assert evaluate(lhs, model, VALUES) != evaluate(rhs, model, VALUES)
    assert equal(lhs, rhs, CommutationDecl.of([("theta", "phi")]))


def test_identifications():
    decls = CommutationDecl.of(identify=[("O", "E"), ("o", "e"), ("eta", "Id")])
    assert normalize(parse_formal("O(a) o^-1(b) eta(c)"), decls) == parse_formal("E(a) e^-1(b) c")
    inv = CommutationDecl.of(identify=[("o", "O^-1")])
    assert equal(parse_formal("o(O(a))"), parse_formal("a"), inv)


def test_identification_cycle_rejected():
    with pytest.raises(FormalError):
        CommutationDecl.of(identify=[("o", "O^-1"), ("O", "o^-1")])


def test_cancellation_across_commuting_symbols():
    decls = CommutationDecl.of([("theta", "eta")])
    w = parse_formal("[theta,eta,theta^-1](a)")
    assert normalize(w, decls) == parse_formal("eta(a)")
    assert normalize(w) == w


def test_parser_forms():
    assert parse_formal("θ(a)") == parse_formal("theta(a)")
    assert parse_formal("(a b)^2") == parse_formal("a b a b")
    assert parse_formal("theta^-1(a b)") == parse_formal("[theta^-1](a) [theta^-1](b)")
    assert parse_formal("[O,e,o](a)") == parse_formal("O(e(o(a)))")
    assert parse_formal("a 1 b") == parse_formal("a b")
    assert parse_formal("1") == FormalWord(())
    with pytest.raises(FormalError):
        parse_formal("theta(a")


def test_unknown_operator_rejected():
    zeta = ("zeta", 1)
    with pytest.raises(FormalError):
        normalize(FormalWord((((zeta,), "a", 1),)))


def test_decl_json_round_trip():
    d = CommutationDecl.of([("E", "O"), ("e", "o")], [("o", "O^-1"), ("eta", "Id")])
    assert CommutationDecl.from_json(d.to_json()) == d


def test_substitute():
    w = parse_formal("a theta(b)")
    assert w.substitute({"b": None}) == parse_formal("a")
    assert w.substitute({"b": parse_formal("a c")}) == parse_formal("a theta(a c)")
    assert NO_DECLS.resolve("theta") == (("theta", 1),)
    assert isinstance(evaluate(parse_formal("a"), {}, VALUES), Word)

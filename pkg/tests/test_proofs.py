import pytest
from hypothesis import given, strategies as st

from knotgroups.formal import NO_DECLS, CommutationDecl, evaluate, normalize, parse_formal
from knotgroups.proofs import (
    BLOCK_RANK,
    FAMILIES,
    OUTPUTS,
    PARITY,
    PARITY_DECLS,
    R3_CASES,
    audit_printed,
    check_r3_invariance,
    derived_equation,
    extract_constraint,
    family_automorphisms,
    four_commutators,
    interpret,
    no_go_check,
    printed,
    r3_reduce,
    refute_family,
    transvection,
    vr4_check,
    vr4_reduce,
)
from knotgroups.words import commutes, compose, identity, parse_word

from conftest import words

T01, T23, T10 = transvection(4, 0, 1), transvection(4, 2, 3), transvection(4, 1, 0)
ALL3 = CommutationDecl.of([("theta", "phi"), ("theta", "eta"), ("phi", "eta")])


def values(a, b, c):
    return {"a": a, "b": b, "c": c}


@given(words(4, 4), words(4, 4), words(4, 4))
def test_even_r3_holds_for_commuting_concrete_maps(a, b, c):
    model = {"theta": T01, "phi": compose(T01, T23), "eta": identity(4)}
    assert commutes(model["theta"], model["phi"])
    lhs, rhs = r3_reduce("LHS"), r3_reduce("RHS")
    for o in OUTPUTS:
        assert evaluate(lhs[o], model, values(a, b, c)) == evaluate(rhs[o], model, values(a, b, c))


@given(words(4, 4), words(4, 4), words(4, 4))
def test_vr4_holds_for_pairwise_commuting_concrete_maps(a, b, c):
    model = {"theta": T01, "phi": T23, "eta": compose(T01, T01)}
    lhs, rhs = vr4_reduce("LHS"), vr4_reduce("RHS")
    for o in OUTPUTS:
        assert evaluate(lhs[o], model, values(a, b, c)) == evaluate(rhs[o], model, values(a, b, c))


def test_vr4_breaks_for_noncommuting_eta():
    model = {"theta": T01, "phi": T23, "eta": T10}
    lhs, rhs = vr4_reduce("LHS"), vr4_reduce("RHS")
    v = values(parse_word("x0"), parse_word("x1"), parse_word("x2"))
    assert any(evaluate(lhs[o], model, v) != evaluate(rhs[o], model, v) for o in OUTPUTS)


@given(words(4, 4), words(4, 4), words(4, 4))
def test_vr4_holds_for_noncommuting_theta_phi(a, b, c):
    # theta, phi act only at the one classical crossing, so their order is irrelevant
    model = {"theta": T01, "phi": T10, "eta": T23}
    assert not commutes(T01, T10)
    lhs, rhs = vr4_reduce("LHS"), vr4_reduce("RHS")
    for o in OUTPUTS:
        assert evaluate(lhs[o], model, values(a, b, c)) == evaluate(rhs[o], model, values(a, b, c))


def test_vr4_dependence_on_each_pair():
    assert vr4_check(ALL3)
    assert vr4_check(ALL3.without_commute(("theta", "phi")))
    assert not vr4_check(ALL3.without_commute(("theta", "eta")))
    assert not vr4_check(ALL3.without_commute(("phi", "eta")))


def test_even_case_needs_theta_phi():
    assert check_r3_invariance("Even3", CommutationDecl.of([("theta", "phi")]))
    assert not check_r3_invariance("Even3", NO_DECLS)


def test_even_case_passes_b_through():
    assert "Even3" in R3_CASES
    for side in ("LHS", "RHS"):
        assert r3_reduce(side, "Even3", PARITY)["y"] == parse_formal("b")


@pytest.mark.parametrize("case", ["Case1", "Case2", "Case3"])
def test_parity_cases_under_four_commutators(case):
    lhs, rhs = (r3_reduce(s, case, PARITY) for s in ("LHS", "RHS"))
    report = {o: normalize(lhs[o], PARITY_DECLS) == normalize(rhs[o], PARITY_DECLS) for o in OUTPUTS}
    assert report == {"x": False, "y": True, "z": False}


def test_parity_blind_identification_restores_invariance():
    blind = PARITY_DECLS.with_identify(("O", "E"), ("o", "e"))
    for case in ("Case1", "Case2", "Case3"):
        assert check_r3_invariance(case, blind)


def test_printed_even_case_matches_derived():
    for o in OUTPUTS:
        lt, rt = printed("Even3", o)
        assert normalize(lt) == normalize(r3_reduce("LHS")[o])
        assert normalize(rt) == normalize(r3_reduce("RHS")[o])


def test_transcription_mismatches():
    bad = {(t.case, t.output, t.side) for t in audit_printed() if not t.matches}
    assert bad == {("Case1", "z", "RHS"), ("Case3", "x", "LHS"), ("Case3", "x", "RHS"), ("Case3", "z", "RHS")}


@pytest.mark.parametrize("source", ["derived", "printed"])
def test_four_commutators_extracted(source):
    found = [str(e.constraint) for e in four_commutators(source)]
    assert found == ["[E,O]", "[e,o]", "[O,o]", "[E,e]"]


def test_extract_trivial_when_sides_agree():
    eq = derived_equation("Case1", "y", PARITY)
    residual = extract_constraint(eq, (), PARITY_DECLS)
    assert residual == (parse_formal("1"), parse_formal("1"))
    assert interpret(residual, PARITY_DECLS).kind == "trivial"


@pytest.mark.parametrize("family,forced", [("B", ("e", "o")), ("S", ("E", "O")), ("I", ("E", "O")), ("Q", ("E", "O"))])
def test_no_go_forced_identification(family, forced):
    assert no_go_check(family).forced == forced


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_counterexample_is_genuine(family):
    ce = refute_family(family)
    assert ce is not None
    ops = family_automorphisms(family)
    lhs, rhs = derived_equation(ce.case, ce.output, PARITY)
    assert evaluate(lhs, ops, ce.values) != evaluate(rhs, ops, ce.values)
    # the block maps honour the four commutators
    for f, g in (("E", "O"), ("e", "o"), ("O", "o"), ("E", "e")):
        assert commutes(ops[f], ops[g])


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_parity_blind_control_has_no_counterexample(family):
    assert refute_family(family, max_len=1, distinguish=False) is None
    assert family_automorphisms(family, False)["E"].rank == BLOCK_RANK

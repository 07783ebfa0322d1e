import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from knotgroups import corpus
from knotgroups.invariants import (
    FiniteGroup,
    HomCountBudgetError,
    abelian_invariants,
    count_homs,
    count_homs_exhaustive,
    default_panel,
    direct_product,
    group_from_json,
    parse_cycles,
    permutation_group,
    signature,
    smith_normal_form,
    trivial_group,
)
from knotgroups.presentation import Presentation, build, preset, tietze_simplify
from knotgroups.words import parse_word

from conftest import words

PANEL = {g.name: g for g in default_panel()}
Z3 = permutation_group("Z3", ["(1 2 3)"])
Z2 = permutation_group("Z2", ["(1 2)"])

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def det(m):
    return round(np.linalg.det(np.array(m, dtype=float))) if m else 1


def determinantal_invariants(a):
    """Invariant factors via gcds of k x k minors."""
    rows, cols = len(a), len(a[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[a[i][j] for j in ci] for i in ri]))
        if g == 0:
            out.extend([0] * (min(rows, cols) - len(out)))
            break
        out.append(g // prev)
        prev = g
    return out


@given(matrices)
def test_snf_matches_determinantal_divisors(a):
    assert smith_normal_form(a) == determinantal_invariants(a)


@given(matrices, st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3))
def test_snf_invariant_under_unimodular_row_operation(a, i, j, k):
    rows = len(a)
    i, j = i % rows, j % rows
    if i == j:
        return
    b = [list(r) for r in a]
    b[i] = [x + k * y for x, y in zip(b[i], b[j])]
    assert smith_normal_form(b) == smith_normal_form(a)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [2, 4]]) == [2, 0]
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]


def test_abelian_invariant_format():
    names = ("a", "b")
    p = Presentation(names, (parse_word("a^3", names),))
    assert abelian_invariants(p) == [3, 0]
    assert abelian_invariants(Presentation(("a",), (parse_word("a^3", ("a",)),))) == [3]
    assert abelian_invariants(Presentation(("a",), ())) == [0]
    assert abelian_invariants(Presentation((), ())) == []


def test_panel_orders_and_classes():
    assert [(g.name, g.order) for g in default_panel()] == [("S3", 6), ("D4", 8), ("A4", 12), ("S4", 24)]
    assert [len(PANEL[n].conjugacy_classes()) for n in ("S3", "D4", "A4", "S4")] == [3, 5, 4, 5]


def test_group_table_validation():
    table = np.array([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        FiniteGroup("bad", table)
    with pytest.raises(ValueError):
        parse_cycles("(1 1 2)")


def test_group_json_round_trip():
    g = PANEL["D4"]
    again = group_from_json(g.to_json())
    assert again.order == 8 and np.array_equal(again.table, g.table)


small_presentations = st.lists(words(rank=2, max_len=5), max_size=2).map(lambda r: Presentation(("x", "y"), tuple(r)))


@given(small_presentations, st.sampled_from(["S3", "D4", "A4"]))
def test_count_matches_exhaustive(p, gname):
    G = PANEL[gname]
    assert count_homs(p, G) == count_homs_exhaustive(p, G)


@given(small_presentations)
def test_hom_count_multiplicative_over_products(p):
    G = direct_product(Z2, Z3)
    assert count_homs(p, G) == count_homs(p, Z2) * count_homs(p, Z3)


def test_free_group_count():
    p = Presentation(("x", "y"), ())
    assert count_homs(p, PANEL["S4"]) == 24**2
    assert count_homs(p, trivial_group()) == 1


def test_budget_error():
    p = Presentation(tuple(f"x{i}" for i in range(6)), ())
    with pytest.raises(HomCountBudgetError):
        count_homs(p, PANEL["S4"], max_rows=1000)


def test_knot_signatures_agree_with_oracle():
    expected = {"trefoil": 12, "unknot": 6, "figure-eight": 6}
    for name, n in expected.items():
        d = corpus.diagram(name)
        p = tietze_simplify(build(d, preset("pi1", d)))
        assert count_homs_exhaustive(p, PANEL["S3"]) == n
        assert signature(d, preset("pi1", d), [PANEL["S3"]]).hom_counts == (("S3", n),)


def test_trefoil_full_signature():
    d = corpus.diagram("trefoil")
    sig = signature(d, preset("pi1", d))
    assert sig.abelian_invariants == (0,)
    assert dict(sig.hom_counts) == {"S3": 12, "D4": 8, "A4": 36, "S4": 96}

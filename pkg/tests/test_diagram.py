import pytest
from hypothesis import given, strategies as st

from knotgroups import corpus
from knotgroups.diagram import (
    CLASSICAL_KINDS,
    MOVE_KINDS,
    DiagramError,
    apply_move,
    diagram_from_json,
    enumerate_sites,
    faces,
    genus,
    isomorphic,
    realize_diagram,
    unknot,
)
from knotgroups.experiments import WalkConfig, random_walk
from knotgroups.gauss import Parity, parse_gauss, serialize_gauss

from conftest import marked_codes

TRIANGLES = ("R3", "VR3", "VR4")


def walk_diagrams(name, steps=25, seed=3):
    out = [corpus.diagram(name)]
    for _, d in random_walk(out[0], WalkConfig(steps=steps, seed=seed)):
        out.append(d)
    return out


@given(marked_codes())
def test_realization_keeps_code_and_is_planar(code):
    d = realize_diagram(code)
    assert serialize_gauss(d.gauss_code()) == serialize_gauss(code)
    assert genus(d) == 0
    assert d.n_classical == code.n_crossings


@given(marked_codes())
def test_euler_characteristic(code):
    d = realize_diagram(code)
    n = len(d.crossings)
    assert len(faces(d)) == n + 2


@given(marked_codes())
def test_json_round_trip(code):
    d = realize_diagram(code)
    again = diagram_from_json(d.dumps())
    assert again == d
    assert isomorphic(again, d)


@given(marked_codes())
def test_semi_arc_counts(code):
    d = realize_diagram(code)
    n_theorem, labels = d.semi_arcs(corollary=False)
    assert n_theorem == 2 * d.n_classical
    assert set(labels) == {c.id for c in d.crossings if c.classical}
    n_cor, _ = d.semi_arcs(corollary=True)
    assert n_cor == 2 * len(d.crossings)


def test_crossingless_circle_has_one_semi_arc():
    assert unknot().semi_arcs(False)[0] == 1
    assert unknot().semi_arcs(True)[0] == 1
    assert len(faces(unknot())) == 2


def test_classical_codes_need_no_virtual_crossings():
    for name in ("trefoil", "figure-eight", "kink"):
        assert corpus.diagram(name).n_virtual == 0
    assert corpus.diagram("virtual-trefoil").n_virtual >= 1


def test_json_rejects_inconsistent_tables():
    data = corpus.diagram("trefoil").to_json()
    data["crossings"][0]["sign"] = 0
    with pytest.raises(DiagramError):
        diagram_from_json(data)


@pytest.mark.parametrize("name", ["trefoil", "virtual-trefoil", "figure-eight"])
def test_every_insertion_has_an_undo(name):
    for d in walk_diagrams(name, steps=6):
        for kind in MOVE_KINDS:
            if kind == "Detour" or kind in TRIANGLES:
                continue
            for site in enumerate_sites(d, kind, "apply")[:4]:
                e = apply_move(d, site)
                assert len(e.crossings) > len(d.crossings)
                assert any(isomorphic(apply_move(e, u), d) for u in enumerate_sites(e, kind, "undo")), site


@pytest.mark.parametrize("name", ["trefoil", "figure-eight", "virtual-trefoil"])
def test_triangle_moves_are_involutions(name):
    seen = 0
    for d in walk_diagrams(name, steps=40, seed=11):
        for kind in TRIANGLES:
            for site in enumerate_sites(d, kind, "apply"):
                e = apply_move(d, site)
                assert len(e.crossings) == len(d.crossings)
                assert any(isomorphic(apply_move(e, s), d) for s in enumerate_sites(e, kind, "apply"))
                seen += 1
    assert seen > 0


@pytest.mark.parametrize("name", ["trefoil", "figure-eight", "virtual-trefoil"])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_moves_preserve_parity_of_surviving_crossings(name, seed):
    d = corpus.diagram(name)
    for site, e in random_walk(d, WalkConfig(steps=20, seed=seed)):
        before, after = d.parities(), e.parities()
        if site.kind == "Detour":
            # re-drawing relabels crossings
            assert sorted(map(str, before.values())) == sorted(map(str, after.values()))
        else:
            for cid in set(before) & set(after):
                assert before[cid] == after[cid]
        d = e


def test_r3_triangles_have_even_number_of_odd_crossings():
    seen = 0
    for name in ("trefoil", "figure-eight", "virtual-trefoil"):
        for d in walk_diagrams(name, steps=40, seed=5):
            par = d.parities()
            for site in enumerate_sites(d, "R3", "apply"):
                ids = _site_crossings(d, site)
                assert len(ids) == 3
                odd = sum(par[c] is Parity.ODD for c in ids)
                assert odd in (0, 2)
                seen += 1
    assert seen > 0


def _site_crossings(d, site):
    m = d.n_passes
    return sorted({d.passes[(k + t) % m][0] for k in site.location for t in (0, 1)})


@given(st.sampled_from(CLASSICAL_KINDS), st.integers(0, 10_000))
def test_classical_moves_keep_virtual_count(kind, seed):
    import random

    d = walk_diagrams("virtual-trefoil", steps=4, seed=seed % 7)[-1]
    sites = enumerate_sites(d, kind, "apply")
    if not sites:
        return
    e = apply_move(d, random.Random(seed).choice(sites))
    assert e.n_virtual == d.n_virtual

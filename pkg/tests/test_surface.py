import pytest

from pillowcase.corpus import CORPUS, named
from pillowcase.errors import InvalidInput
from pillowcase.surface import (BranchTuple, build_surface, cyclic_surface, geometric_invariants,
                                load_surface_spec, parse_surface_spec, top_square_edges)

from conftest import random_instances

WOLLMILCHSAU_GLUING = """\
B1_0: +e1_0 +e2_0 +e3_0 +e4_0
B1_1: +e1_1 +e2_1 +e3_1 +e4_1
B1_2: +e1_2 +e2_2 +e3_2 +e4_2
B1_3: +e1_3 +e2_3 +e3_3 +e4_3
B2_0: -e1_0 -e2_1 -e3_2 -e4_3
B2_1: -e1_1 -e2_2 -e3_3 -e4_0
B2_2: -e1_2 -e2_3 -e3_0 -e4_1
B2_3: -e1_3 -e2_0 -e3_1 -e4_2
"""


def test_wollmilchsau_gluing_listing(wollmilchsau):
    S = build_surface(*wollmilchsau)
    assert S.num_squares == 8 and S.num_edges == 16
    assert S.gluing_listing() == WOLLMILCHSAU_GLUING
    # e3_2 sits on the top square over the identity
    assert "e3_2" in S.gluing_listing().splitlines()[4]


def test_top_square_edges(wollmilchsau):
    G, T = wollmilchsau
    assert [str(h) for h in top_square_edges(T, G.identity)] == ["0", "1", "2", "3"]


def test_z3_layout(z3):
    S = build_surface(*z3)
    inv = geometric_invariants(S)
    assert S.num_squares == 6
    assert not inv.translation
    assert inv.preimage_counts == (3, 1, 1, 1)
    # the three preimages of z1 are unbranched cone points of angle pi
    assert inv.order_one_indices == (1,)


def test_pillowcase_itself():
    G, T = named("pillowcase")
    S = build_surface(G, T)
    assert (S.num_squares, S.num_edges, S.num_vertices) == (2, 4, 4)
    inv = geometric_invariants(S)
    assert inv.genus == 0 and inv.stratum == "Q(-1,-1,-1,-1)"
    assert S.gluing_listing().splitlines()[0] == "B1_0: +e1_0 +e2_0 +e3_0 +e4_0"


@pytest.mark.parametrize("name, squares, genus, stratum, translation", [
    ("wollmilchsau", 8, 3, "H(1,1,1,1)", True),
    ("ornithorynque", 12, 4, "H(2,2,2)", True),
    ("z3", 6, 1, "Q(1,1,1,-1,-1,-1)", False),
    ("z8", 16, 7, "H(3,3,3,3)", True),
    ("klein", 8, 1, "H(0)", True),
])
def test_corpus_invariants(name, squares, genus, stratum, translation):
    G, T = named(name)
    inv = geometric_invariants(build_surface(G, T))
    assert 2 * G.order == squares
    assert (inv.genus, inv.translation) == (genus, translation)
    assert inv.stratum == stratum


def test_ornithorynque_regular_preimages(ornithorynque):
    inv = geometric_invariants(build_surface(*ornithorynque))
    assert inv.preimage_counts[3] == 3 and inv.cone_angles[3] == 2
    assert not inv.all_sigma_singular


def test_wollmilchsau_all_singular(wollmilchsau):
    inv = geometric_invariants(build_surface(*wollmilchsau))
    assert inv.all_sigma_singular and inv.euler_characteristic == -4


def test_cell_euler_matches_riemann_hurwitz():
    for G, T in random_instances(60, 24, seed=3):
        S = build_surface(G, T)
        inv = geometric_invariants(S)
        assert S.euler_characteristic() == inv.euler_characteristic
        # every edge borders exactly one bottom and one top square
        counts = {}
        for sq, edges in S.incidence.items():
            for j, h, sign in edges:
                counts.setdefault((j, h), []).append(sign)
        assert all(sorted(v) == [-1, 1] for v in counts.values())


def test_branch_tuple_rejects_nonzero_sum():
    G, T = named("wollmilchsau")
    with pytest.raises(InvalidInput):
        BranchTuple(G, (G.element(1), G.element(1), G.element(1), G.element(2)))


def test_branch_tuple_needs_generation():
    G, _ = named("ornithorynque")
    T = BranchTuple(G, (G.element(2), G.element(2), G.element(2), G.element(0)))
    with pytest.raises(InvalidInput):
        T.validate()


@pytest.mark.parametrize("doc, message", [
    ({"branch_tuple": [[1], [1], [1], [1]]}, "ambient_moduli"),
    ({"ambient_moduli": [4], "branch_tuple": [[1], [1], [1]]}, "4 rows"),
    ({"ambient_moduli": [4], "branch_tuple": [[1], [1], [1], [1, 0]]}, "row 4"),
    ({"ambient_moduli": [4], "branch_tuple": [[1], [1], [1], [2]]}, "g1\\+g2\\+g3\\+g4 = 0"),
    ({"ambient_moduli": ["x"], "branch_tuple": [[1], [1], [1], [1]]}, "malformed"),
])
def test_spec_errors_are_located(doc, message):
    with pytest.raises(InvalidInput, match=message):
        parse_surface_spec(doc)


def test_load_spec_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text('{"ambient_moduli": [8], "branch_tuple": [[1], [1], [1], [5]]}')
    (G, T), doc = load_surface_spec(p)
    assert G.order == 8 and str(T) == "(1,1,1,5)"
    p.write_text("{")
    with pytest.raises(InvalidInput, match="invalid JSON"):
        load_surface_spec(p)


def test_cyclic_surface_helper():
    G, T = cyclic_surface(8, (1, 1, 1, 5))
    assert T.orders == (8, 8, 8, 8)


@pytest.mark.parametrize("name", CORPUS)
def test_gluing_listing_is_stable(name):
    G, T = named(name)
    assert build_surface(G, T).gluing_listing() == build_surface(*named(name)).gluing_listing()

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pillowcase.abelian import Character, character_from_turns, enumerate_characters
from pillowcase.cohomology import isotypic_basis, restriction_classify
from pillowcase.corpus import CORPUS, named, order480_character
from pillowcase.cyclotomic import field
from pillowcase.errors import CapabilityError, DomainError
from pillowcase.hodge import (Signature, discreteness_verdict, finiteness_lookup, geometry_class,
                              geometry_from_signature, hodge_gram, minimal_square_search, polyhedral_tables,
                              search_definite_nondiscrete, signature_exact, signature_of_form, tables_text,
                              tangent_character, triangle_data)

from conftest import random_instances

F = Fraction


def by_turns(name, turns):
    G, T = named(name)
    return G, T, character_from_turns(G, T.elements, turns)


# ---- area form

def test_trivial_gram_is_zero(wollmilchsau):
    G, T = wollmilchsau
    H = hodge_gram(G, T, Character(G, (0,)))
    assert H.dimension == 3 and H.is_zero()


@pytest.mark.parametrize("name", CORPUS)
def test_gram_is_hermitian_and_diagonal_in_split_basis(name):
    G, T = named(name)
    for rho in enumerate_characters(G):
        H = hodge_gram(G, T, rho)
        assert H.is_hermitian()
        S = isotypic_basis(G, T, rho)
        if S.ha is not None:
            assert H.matrix[0][1] == 0 and H.matrix[1][0] == 0


def test_gram_vanishes_on_rel_vector():
    for G, T in random_instances(30, 12, seed=2):
        for rho in enumerate_characters(G):
            rc = restriction_classify(T, rho)
            if rc.case != "Case2":
                continue
            S = isotypic_basis(G, T, rho)
            H = hodge_gram(G, T, rho)
            v = [field(S.N).from_rational(x) for x in rc.kernel_basis[0]]
            from pillowcase.hodge import area_kernel
            K = area_kernel(G, S.values, S.N)
            val = sum((v[i].conjugate() * K[i][j] * v[j] for i in range(4) for j in range(4)), 0)
            assert val == 0


# ---- signatures

def test_signature_examples(z3, wollmilchsau):
    G, T, rho = order480_character()
    assert signature_exact(T, rho) == Signature(0, 2, 0)
    G, T = z3
    assert signature_exact(T, Character(G, (1,))).as_tuple() == (1, 1, 0)
    G, T = wollmilchsau
    assert str(signature_exact(T, Character(G, (2,)))) == "(0,1,1)"
    assert str(signature_exact(T, Character(G, (1,)))) == "(0,2,0)"
    with pytest.raises(DomainError):
        signature_exact(T, Character(G, (0,)))


@pytest.mark.parametrize("name", CORPUS)
def test_closed_form_signature_matches_gram(name):
    G, T = named(name)
    for rho in enumerate_characters(G):
        if rho.is_trivial():
            continue
        assert signature_exact(T, rho) == signature_of_form(hodge_gram(G, T, rho))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(random_instances(80, 16, seed=4)), st.data())
def test_signature_property(inst, data):
    G, T = inst
    rho = data.draw(st.sampled_from(enumerate_characters(G)))
    if rho.is_trivial():
        return
    sig = signature_exact(T, rho)
    assert sum(sig.as_tuple()) == 2
    assert sig == signature_of_form(hodge_gram(G, T, rho))
    # conjugation swaps the definite parts
    conj = signature_exact(T, rho.conjugate())
    assert (conj.n0, conj.n_plus, conj.n_minus) == (sig.n0, sig.n_minus, sig.n_plus)


# ---- geometry and triangles

def test_geometry_examples(ornithorynque, z3, wollmilchsau):
    G, T = ornithorynque
    assert str(geometry_class(T, Character(G, (1,)))) == "Spherical(+)"
    G, T = z3
    assert geometry_class(T, Character(G, (1,))).tag == "Euclidean"
    G, T = wollmilchsau
    assert geometry_class(T, Character(G, (0,))).tag == "Trivial"
    assert geometry_class(T, Character(G, (2,))).tag == "Hyperbolic"
    G, T = named("klein")
    # turns (1/2, 0, 1/2, 0): two unit values
    assert geometry_class(T, Character(G, (1, 0))).tag == "Degenerate"


def test_geometry_from_signature():
    assert str(geometry_from_signature(Signature(0, 0, 2))) == "Spherical(-)"
    assert str(geometry_from_signature(Signature(1, 0, 1))) == "Euclidean(-)"
    assert geometry_from_signature(Signature(2, 0, 0)).tag == "Degenerate"


def test_triangle_wollmilchsau_parabolic(wollmilchsau):
    G, T = wollmilchsau
    tri = triangle_data(T, Character(G, (2,)))
    assert tri.angles == (0, 0, 0) and tri.vertex_types == ("parabolic",) * 3
    assert tri.geometry == "Hyperbolic"


def test_triangle_spherical_and_euclidean(ornithorynque, z3):
    G, T = ornithorynque
    tri = triangle_data(T, Character(G, (1,)))
    assert tri.angles == (F(2, 3),) * 3 and tri.angle_sum == 2
    G, T = z3
    tri = triangle_data(T, Character(G, (1,)))
    assert tri.angle_multiset() == (F(1, 3),) * 3 and tri.angle_sum == 1
    tri2 = triangle_data(T, Character(G, (2,)))
    assert tri2.angle_multiset() == (F(1, 3),) * 3


def test_triangle_refuses_degenerate():
    G, T = named("klein")
    with pytest.raises(DomainError):
        triangle_data(T, Character(G, (1, 0)))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(random_instances(80, 24, seed=9)), st.data())
def test_angle_sum_matches_geometry(inst, data):
    G, T = inst
    rho = data.draw(st.sampled_from(enumerate_characters(G)))
    geo = geometry_class(T, rho)
    if geo.tag in ("Trivial", "Degenerate"):
        return
    tri = triangle_data(T, rho)
    assert tri.geometry == geo.tag
    assert all(0 <= a < 1 for a in tri.angles)


# ---- tables

def test_table_shape():
    rows = polyhedral_tables()
    for total in (1, 3):
        part = [r for r in rows if r.total == total]
        assert len(part) == 15
        assert sum(r.turns is None for r in part) == 1
    for r in rows:
        if r.turns is not None:
            assert sum(r.turns) == r.total and all(0 < t < 1 for t in r.turns)
    assert "1/6 1/6 1/6 1/2 | Tetrahedral" in tables_text()


def test_tables_are_conjugation_symmetric():
    rows = polyhedral_tables()
    first = {r.turns: r.group for r in rows if r.total == 1 and r.turns}
    third = {r.turns: r.group for r in rows if r.total == 3 and r.turns}
    assert {tuple(sorted(1 - t for t in k)): g for k, g in first.items()} == third


@pytest.mark.parametrize("turns, verdict", [
    (("1/6", "1/6", "1/6", "1/2"), "Finite(Tetrahedral)"),
    (("1/4", "1/4", "1/4", "1/4"), "Finite(Dihedral(2,1))"),
    (("1/8", "1/8", "1/8", "5/8"), "Infinite"),
    (("1/2", "5/6", "5/6", "5/6"), "Finite(Tetrahedral)"),
    (("1/2", "1/6", "1/6", "1/6"), "Finite(Tetrahedral)"),
    (("1/10", "1/10", "2/5", "2/5"), "Finite(Dihedral(5,1))"),
    (("9/10", "9/10", "3/5", "3/5"), "Finite(Dihedral(5,1))"),
])
def test_finiteness_lookup(turns, verdict):
    assert str(finiteness_lookup(turns)) == verdict


def test_every_table_row_is_found():
    for r in polyhedral_tables():
        if r.turns is not None:
            for perm in (r.turns, r.turns[::-1]):
                assert finiteness_lookup([str(t) for t in perm]).group == r.group


def test_finiteness_domain():
    with pytest.raises(DomainError):
        finiteness_lookup(["0", "1/2", "1/4", "1/4"])
    with pytest.raises(DomainError):
        finiteness_lookup(["1/2", "1/2", "1/2", "1/2"])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 60), max_value=F(59, 60), max_denominator=60), min_size=3, max_size=3))
def test_lookup_commutes_with_conjugation(ts):
    last = (1 - sum(ts)) % 1
    turns = ts + [last]
    if last == 0 or sum(turns) not in (1, 3):
        return
    a = finiteness_lookup(turns)
    b = finiteness_lookup([1 - t for t in turns])
    assert (a.finite, a.group) == (b.finite, b.group)


# ---- discreteness

def test_discreteness_examples(z8, z3):
    G, T, rho = order480_character()
    v = discreteness_verdict(T, rho)
    assert v.verdict == "NotDiscrete" and v.ade_nondiscrete
    assert "24,40" in v.reason
    G, T = z8
    assert discreteness_verdict(T, Character(G, (1,))).verdict == "NotDiscrete"
    G, T = z3
    v = discreteness_verdict(T, Character(G, (1,)))
    assert v.verdict == "Discrete" and v.reason.startswith("extension:")
    G, T = named("ornithorynque")
    assert discreteness_verdict(T, Character(G, (1,))).verdict == "Discrete"


# ---- searches

def test_search_order480_tangent_differs():
    G, T, rho = order480_character()
    hits = dict(search_definite_nondiscrete(G, T))
    rep = hits[rho]
    assert rep.tangent_differs is True
    assert rep.tangent_character not in (rho, rho.conjugate())
    assert rep.aff_invariance == "Yes-byOrders"


def test_search_wollmilchsau_is_empty(wollmilchsau):
    assert search_definite_nondiscrete(*wollmilchsau) == []


def test_search_z8(z8):
    G, T = z8
    chars = [rho.dual_coords for rho, _ in search_definite_nondiscrete(G, T)]
    assert (1,) in chars


def test_tangent_character(z8):
    G, T = z8
    assert tangent_character(G, T).dual_coords == (4,)
    G, T = named("z3")
    assert tangent_character(G, T) is None


def test_minimal_search_small_caps():
    assert minimal_square_search(4) == []
    assert minimal_square_search(12) == []
    with pytest.raises(CapabilityError):
        minimal_square_search(80)

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pillowcase.abelian import (AbelianGroup, Character, GroupAutomorphism, RationalTurn,
                                canonicalize_subgroup, character_from_turns, element_order,
                                enumerate_abelian_groups, enumerate_automorphisms, enumerate_characters,
                                generates, primary_generators, subgroup_elements, trivial_character)
from pillowcase.errors import CapabilityError, InvalidInput
from pillowcase.smith import integer_kernel, matmul, smith_normal_form, solve_integer

ORDER480_AMBIENT = [120, 120, 120]
ORDER480_GENS = [[20, 0, 0], [0, 15, 0], [0, 0, 12], [100, 105, 108]]


def closure_size(moduli, gens):
    """Independent count: breadth-first closure of the generators in the ambient group."""
    seen = {tuple(0 for _ in moduli)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % m for a, b, m in zip(x, g, moduli))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


# ---- rational turns

def test_turn_reduces_mod_one():
    assert RationalTurn(Fraction(7, 4)) == RationalTurn(Fraction(3, 4))
    assert str(RationalTurn.parse("-1/3")) == "2/3"
    assert RationalTurn.parse("1").is_zero()


def test_turn_parse_rejects_garbage():
    with pytest.raises(InvalidInput):
        RationalTurn.parse("one half")


# ---- groups

def test_group_validation():
    with pytest.raises(InvalidInput):
        AbelianGroup((4, 6))
    with pytest.raises(InvalidInput):
        AbelianGroup((1, 4))
    G = AbelianGroup.from_moduli([6, 4])
    assert G.moduli == (2, 12) and G.order == 24 and G.exponent == 12


def test_wollmilchsau_group():
    G, gens = canonicalize_subgroup([4], [[1], [1], [1], [1]])
    assert G.moduli == (4,) and G.order == 4
    assert [g.coords for g in gens] == [(1,)] * 4


def test_order480_group_order_matches_closure():
    G, gens = canonicalize_subgroup(ORDER480_AMBIENT, ORDER480_GENS)
    assert G.order == closure_size(ORDER480_AMBIENT, ORDER480_GENS) == 480
    assert [g.order for g in gens] == [6, 8, 10, 120]
    assert len(subgroup_elements(G, gens)) == 480


def test_zero_generator_gives_trivial_group():
    G, gens = canonicalize_subgroup([6], [[0]])
    assert G.order == 1 and gens[0].is_identity()


def test_canonicalize_rejects_mismatch():
    with pytest.raises(InvalidInput):
        canonicalize_subgroup([], [[1]])
    with pytest.raises(InvalidInput):
        canonicalize_subgroup([4, 4], [[1]])


def test_canonicalize_keeps_cyclic_coordinates():
    G, gens = canonicalize_subgroup([6], [[1], [1], [1], [3]])
    assert [g.coords[0] for g in gens] == [1, 1, 1, 3]


def test_element_orders():
    assert element_order(AbelianGroup((6,)), AbelianGroup((6,)).element(3)) == 2
    assert AbelianGroup((8,)).element(5).order == 8
    G, gens = canonicalize_subgroup(ORDER480_AMBIENT, ORDER480_GENS)
    x = gens[3]
    k, y = 1, x
    while not y.is_identity():
        y, k = y + x, k + 1
    assert k == element_order(G, x) == 120


def test_primary_generators():
    assert [g.coords for g in primary_generators(AbelianGroup((6,)))] == [(3,), (2,)]


def test_enumerate_groups_counts():
    # orders 1..16 have 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5 groups
    groups = enumerate_abelian_groups(16)
    counts = [sum(1 for G in groups if G.order == n) for n in range(1, 17)]
    assert counts == [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]


# ---- characters

def test_character_counts():
    assert len(enumerate_characters(AbelianGroup((4,)))) == 4
    G, _ = canonicalize_subgroup(ORDER480_AMBIENT, ORDER480_GENS)
    assert len(enumerate_characters(G)) == 480


def test_character_value():
    G = AbelianGroup((6,))
    assert Character(G, (1,))(G.element(1)).value == Fraction(1, 6)


def test_order480_character_from_turns():
    G, gens = canonicalize_subgroup(ORDER480_AMBIENT, ORDER480_GENS)
    rho = character_from_turns(G, gens, ["1/6", "1/8", "1/10", "73/120"])
    assert [str(rho(g)) for g in gens] == ["1/6", "1/8", "1/10", "73/120"]
    # the fourth generator is 5g1 + 7g2 + 9g3
    assert gens[3] == gens[0] * 5 + gens[1] * 7 + gens[2] * 9


def test_order480_bad_turns_name_a_relation():
    G, gens = canonicalize_subgroup(ORDER480_AMBIENT, ORDER480_GENS)
    with pytest.raises(InvalidInput, match="violate the relation"):
        character_from_turns(G, gens, ["1/6", "1/8", "1/10", "1/2"])


def test_zero_turns_give_trivial_character():
    G, gens = canonicalize_subgroup([6], [[1], [1], [1], [3]])
    assert character_from_turns(G, gens, ["0"] * 4) == trivial_character(G)


# ---- automorphisms

@pytest.mark.parametrize("moduli, count", [((6,), 2), ((4,), 2), ((2, 2), 6), ((8,), 4), ((2, 4), 8)])
def test_automorphism_counts(moduli, count):
    autos = enumerate_automorphisms(AbelianGroup(moduli))
    assert len(autos) == count
    assert len({str(a) for a in autos}) == count
    assert all(a.is_bijective() for a in autos)


def test_automorphism_bound():
    with pytest.raises(CapabilityError):
        enumerate_automorphisms(AbelianGroup((2, 2, 4)), bound=10)


def test_automorphism_label():
    assert str(GroupAutomorphism.multiplication(AbelianGroup((6,)), 5)) == "x->5x"


# ---- Smith normal form

def test_smith_normal_form_example():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    D, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert [D[i][i] for i in range(3)] == [2, 6, 12]


def test_integer_kernel_and_solve():
    A = [[1, 1, 1, 1]]
    K = integer_kernel(A, 4)
    assert len(K) == 3 and all(sum(v) == 0 for v in K)
    assert solve_integer([[2, 0], [0, 3]], [4, 9], 2) == [2, 3]
    assert solve_integer([[2]], [3], 1) is None


# ---- properties

moduli_chains = st.lists(st.integers(2, 6), min_size=1, max_size=2).map(
    lambda ds: AbelianGroup.from_moduli(ds))


@settings(max_examples=60, deadline=None)
@given(moduli_chains, st.data())
def test_character_is_homomorphism(G, data):
    els = list(G.elements())
    rho = data.draw(st.sampled_from(enumerate_characters(G)))
    x, y = data.draw(st.sampled_from(els)), data.draw(st.sampled_from(els))
    assert rho(x + y) == rho(x) + rho(y)
    assert rho.conjugate()(x) == -rho(x)
    assert (rho * rho.conjugate()).is_trivial()


@settings(max_examples=60, deadline=None)
@given(moduli_chains, st.data())
def test_automorphisms_are_homomorphisms(G, data):
    autos = enumerate_automorphisms(G, bound=200)
    psi = data.draw(st.sampled_from(autos))
    els = list(G.elements())
    x, y = data.draw(st.sampled_from(els)), data.draw(st.sampled_from(els))
    assert psi(x + y) == psi(x) + psi(y)
    assert psi.compose(psi.inverse()).is_identity()


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(2, 12), min_size=1, max_size=3), st.data())
def test_canonical_order_equals_closure(ambient, data):
    gens = [[data.draw(st.integers(0, m - 1)) for m in ambient] for _ in range(3)]
    G, images = canonicalize_subgroup(ambient, gens)
    assert G.order == closure_size(ambient, gens)
    assert generates(G, images)
    # integer relations among the generators survive the change of coordinates
    for vec in integer_kernel([[g[i] for g in gens] + [ambient[i] * (i == l) for l in range(len(ambient))]
                               for i in range(len(ambient))], 3 + len(ambient)):
        total = G.identity
        for c, img in zip(vec[:3], images):
            total = total + img * c
        assert total.is_identity()


@settings(max_examples=60, deadline=None)
@given(moduli_chains, st.data())
def test_character_from_own_turns_roundtrip(G, data):
    els = list(G.elements())
    gens = [data.draw(st.sampled_from(els)) for _ in range(3)]
    tup = gens + [-(gens[0] + gens[1] + gens[2])]
    if not generates(G, tup):
        return
    rho = data.draw(st.sampled_from(enumerate_characters(G)))
    assert character_from_turns(G, tup, [rho(g) for g in tup]) == rho

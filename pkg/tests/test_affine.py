import random

import pytest
from hypothesis import given, settings, strategies as st

from pillowcase.abelian import AbelianGroup, Character, GroupAutomorphism, enumerate_characters
from pillowcase.affine import (D_S, D_T, AffineWord, Edge, F, Move, S, Step, T, aff_equals_gamma_sufficient,
                               affine_generators, build_tuple_graph, deck_loop, gamma_closed_forms,
                               gamma_generators, gamma_one, gamma_two, is_identity_action,
                               is_projectively_parabolic, move_source, move_target, projective_class,
                               pullback_matrix, random_loop_words, realized_automorphisms, restricted_action,
                               ring_pullback, ring_pullback_inverse, scalar_pullback, word_derivative)
from pillowcase.cohomology import GroupRingElement, isotypic_basis, ring_matmul
from pillowcase.corpus import CORPUS, named
from pillowcase.errors import CapabilityError, InvalidInput
from pillowcase.surface import BranchTuple, cyclic_surface

from conftest import random_instances


def tup(G, *xs):
    return BranchTuple(G, tuple(G.element(x) for x in xs))


# ---- moves

def test_move_sources_on_the_ornithorynque(ornithorynque):
    G, base = ornithorynque
    assert str(move_source(T, base)) == "(1,1,3,1)"
    assert str(move_source(F, base)) == "(1,1,3,1)"
    assert move_source(S, base) == base


@pytest.mark.parametrize("move", [T, S, F, Move("R", deck=AbelianGroup((6,)).element(2))])
def test_source_and_target_are_inverse(move):
    G = AbelianGroup((6,))
    for x in [(1, 1, 1, 3), (1, 2, 0, 3), (5, 4, 2, 1)]:
        h = tup(G, *x)
        assert move_target(move, move_source(move, h)) == h


def test_move_validation():
    with pytest.raises(InvalidInput):
        Move("X")
    with pytest.raises(InvalidInput):
        Move("R")


def test_t_pullback_is_a_cyclic_permutation(z8):
    G, base = z8
    for rho in enumerate_characters(G):
        P = scalar_pullback(T, base, rho)
        assert P == [[int(j == (i + 1) % 4) for j in range(4)] for i in range(4)]


def test_r_pullback_is_scalar(z8):
    G, base = z8
    g = G.element(3)
    rho = Character(G, (1,))
    P = scalar_pullback(Move("R", deck=g), base, rho)
    from pillowcase.cohomology import rho_scalar
    z = rho_scalar(rho, g, 8)
    assert all(P[i][j] == (z if i == j else 0) for i in range(4) for j in range(4))


def test_f_on_trivial_character(z8):
    G, base = z8
    P = scalar_pullback(F, base, Character(G, (0,)))
    assert P == [[-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0]]


@pytest.mark.parametrize("move", [T, S, F])
def test_ring_pullback_inverse(move):
    G = AbelianGroup((2, 4))
    h = BranchTuple(G, (G.element((1, 1)), G.element((0, 1)), G.element((1, 3)), G.element((0, 3))))
    P = ring_matmul(ring_pullback(move, h), ring_pullback_inverse(move, h))
    one, zero = GroupRingElement.one(G), GroupRingElement.zero(G)
    assert P == [[one if i == j else zero for j in range(4)] for i in range(4)]


def test_derivatives():
    assert T.derivative == D_T and S.derivative == D_S
    assert projective_class(((0, 1), (-1, 0))) == ((0, 1), (-1, 0))
    assert projective_class(((-1, 0), (0, -1))) == ((1, 0), (0, 1))


# ---- graph

def test_ornithorynque_graph(ornithorynque):
    G, base = ornithorynque
    g = build_tuple_graph(G, base)
    assert {str(v) for v in g.vertices} == {"(1,1,1,3)", "(1,1,3,1)", "(1,3,1,1)", "(3,1,1,1)"}
    assert build_tuple_graph(G, base, include_m=True).num_vertices == 8
    assert "(1,1,1,3) | s | (1,1,1,3)" in g.export().splitlines()


def test_wollmilchsau_graph(wollmilchsau):
    G, base = wollmilchsau
    g = build_tuple_graph(G, base)
    assert g.num_vertices == 1
    gens = affine_generators(g)
    assert sorted(w.export() for w in gens) == ["f_(1,1,1,1)", "r[1]_(1,1,1,1)", "s_(1,1,1,1)", "t_(1,1,1,1)"]


def test_graph_bound(ornithorynque):
    with pytest.raises(CapabilityError):
        build_tuple_graph(*ornithorynque, bound=2)


def test_ornithorynque_generators(ornithorynque):
    G, base = ornithorynque
    gens = affine_generators(build_tuple_graph(G, base))
    classes = {word_derivative(w) for w in gens}
    tf = projective_class(((0, -1), (1, 0)))  # D(F) is the identity class
    assert projective_class(D_S) in classes and tf in classes
    assert any(w.name == "r[2]" for w in gens)
    assert all(w.is_loop() for w in gens)


def test_trivial_group_generators_hit_the_modular_group():
    G, base = named("pillowcase")
    classes = {word_derivative(w) for w in affine_generators(build_tuple_graph(G, base))}
    assert projective_class(D_T) in classes and projective_class(D_S) in classes


def test_word_must_be_a_path(ornithorynque):
    G, base = ornithorynque
    other = tup(G, 3, 1, 1, 1)
    with pytest.raises(InvalidInput):
        AffineWord(base, [Step(Edge(other, S, tup(G, 1, 3, 1, 1)), True)])


# ---- gamma words

def test_gamma_derivatives(wollmilchsau):
    _, base = wollmilchsau
    assert word_derivative(AffineWord(base, [Step(Edge(base, S, base), True)])) == ((1, -1), (0, 1))
    assert word_derivative(gamma_one(base)) == ((1, -2), (0, 1))
    assert word_derivative(gamma_two(base)) == ((1, 0), (2, 1))


def test_gamma_closed_forms_on_random_tuples():
    # 50 random generating tuples over groups of order at most 12
    for G, h in random_instances(50, 12, seed=7):
        gamma_generators(G, h, enumerate_characters(G))
        w1, w2 = gamma_one(h), gamma_two(h)
        c1, c2 = gamma_closed_forms(h)
        assert w1.ring_pullback() == c1 and w2.ring_pullback() == c2


def test_gamma_one_eigenvalues_wollmilchsau(wollmilchsau):
    G, base = wollmilchsau
    M = restricted_action(gamma_one(base), isotypic_basis(G, base, Character(G, (1,))))
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    # eigenvalues -1 and 1
    assert tr == 0 and det == -1


def test_gamma_one_parabolic_for_order_two(wollmilchsau):
    G, base = wollmilchsau
    M = restricted_action(gamma_one(base), isotypic_basis(G, base, Character(G, (2,))))
    assert is_projectively_parabolic(M)


@pytest.mark.parametrize("name", CORPUS)
def test_gamma_one_parabolic_iff_unit_product(name):
    G, base = named(name)
    for rho in enumerate_characters(G):
        S_ = isotypic_basis(G, base, rho)
        M1 = restricted_action(gamma_one(base), S_)
        if rho.is_trivial():
            assert is_identity_action(M1)
            assert is_identity_action(restricted_action(gamma_two(base), S_))
            continue
        assert is_projectively_parabolic(M1) == rho(base[0] + base[1]).is_zero()


def test_parabolic_helper():
    assert is_projectively_parabolic([[1, 1], [0, 1]])
    assert not is_projectively_parabolic([[1, 0], [0, 1]])
    assert not is_projectively_parabolic([[2, 0], [0, 1]])


# ---- pullbacks of words

def test_pullback_matrix_basis_mismatch(z8):
    G, base = z8
    rho, other = Character(G, (1,)), Character(G, (3,))
    Sr, So = isotypic_basis(G, base, rho), isotypic_basis(G, base, other)
    with pytest.raises(InvalidInput, match="basis mismatch"):
        pullback_matrix(gamma_one(base), rho, Sr, So)
    with pytest.raises(InvalidInput, match="basis mismatch"):
        pullback_matrix(gamma_one(base), rho, So, Sr)
    P, M = pullback_matrix(gamma_one(base), rho, Sr, Sr)
    assert len(M) == 2


def test_m_move_relabels_characters(ornithorynque):
    G, base = ornithorynque
    psi = GroupAutomorphism.multiplication(G, 5)
    g = build_tuple_graph(G, base, include_m=True)
    m_edge = next(e for e in g.edges if e.move.tag == "M" and e.target == base)
    rho = Character(G, (1,))
    src_rho = rho.compose(psi)
    P, M = pullback_matrix(m_edge.move, rho, isotypic_basis(G, m_edge.source, src_rho),
                           isotypic_basis(G, base, rho), target_tuple=base)
    assert src_rho.dual_coords == (5,)


def test_random_words_are_loops(ornithorynque):
    G, base = ornithorynque
    gens = affine_generators(build_tuple_graph(G, base))
    for w in random_loop_words(gens, 30, rng=random.Random(1)):
        assert w.is_loop()
        assert (w * w.inverse()).is_loop()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_word_pullbacks_preserve_summands(seed):
    G, base = named("z8")
    gens = affine_generators(build_tuple_graph(G, base))
    w = random_loop_words(gens, 1, max_length=4, rng=random.Random(seed))[0]
    rho = Character(G, (seed % 8,))
    # raises if the image leaves the summand
    restricted_action(w, isotypic_basis(G, base, rho))


# ---- Aff versus Gamma

def test_aff_equals_gamma_sufficient():
    G, h = named("order480")
    assert aff_equals_gamma_sufficient(G, h) == "Yes-byOrders"
    assert aff_equals_gamma_sufficient(*named("z8")) == "Yes-byCyclicForm"
    # (1,1,1,1) is the cyclic form with n = 4
    assert aff_equals_gamma_sufficient(*named("wollmilchsau")) == "Yes-byCyclicForm"
    assert aff_equals_gamma_sufficient(*named("klein")) == "Unknown"
    assert aff_equals_gamma_sufficient(*cyclic_surface(8, (3, 3, 3, 7))) == "Yes-byCyclicForm"


def test_realized_automorphisms():
    G, h = named("pillowcase")
    r = realized_automorphisms(build_tuple_graph(G, h, include_m=True))
    assert [str(p) for p in r.automorphisms] == ["id"]
    # x -> 5x sends the base to (5,5,5,3), outside the T/S/F-component
    G, h = named("ornithorynque")
    r = realized_automorphisms(build_tuple_graph(G, h, include_m=True))
    assert [p.is_identity() for p in r.automorphisms] == [True]
    G, h = named("wollmilchsau")
    r = realized_automorphisms(build_tuple_graph(G, h, include_m=True))
    assert [p.is_identity() for p in r.automorphisms] == [True]


def test_realized_automorphisms_needs_m_edges(ornithorynque):
    with pytest.raises(InvalidInput):
        realized_automorphisms(build_tuple_graph(*ornithorynque))

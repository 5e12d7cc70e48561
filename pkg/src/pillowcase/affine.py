"""Basic affine moves between covers, the tuple graph, loop words and their actions.

An edge ``source --X--> target`` stands for the affine map
``M(source) -> M(target)``. Its pullback sends cochains on the target to
cochains on the source and is written with ``h`` = the target tuple:

    t*: (a, b, c, d) -> (b, c, d, a)
    s*: (a, b, c, d) -> (-h1 a, a + b, c, d + h1 a)
    f*: (a, b, c, d) -> (-a, -h2h3h4 d, -h2h3 c, -h2 b)
    r_g*: multiplication by g
    m_psi*: identity in D-coordinates, but rho on the target becomes rho o psi

A loop ``base = w0 -> w1 -> ... -> wk = base`` composes pullbacks in path
order, ``P1 P2 ... Pk``; derivatives compose the same way.
"""

from __future__ import annotations

import random
from math import gcd
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .abelian import (AbelianGroup, Character, GroupAutomorphism, GroupElement,
                      enumerate_automorphisms, enumerate_characters, primary_generators)
from .cohomology import (GroupRingElement, IsotypicSummand, character_field_order,
                         ring_matmul, ring_matrix_evaluate)
from .cyclotomic import Cyclotomic, field as cyc_field
from .errors import CapabilityError, ConsistencyError, InvalidInput
from .linalg import matmul, solve_in_span
from .surface import BranchTuple

DEFAULT_GRAPH_BOUND = 10 ** 6

Matrix2 = tuple[tuple[int, int], tuple[int, int]]

D_T: Matrix2 = ((0, -1), (1, 0))
D_S: Matrix2 = ((1, -1), (0, 1))
D_ID: Matrix2 = ((1, 0), (0, 1))


def _mul2(A, B) -> Matrix2:
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _inv2(A) -> Matrix2:
    # determinant one
    return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))


def projective_class(A) -> Matrix2:
    """Representative of ``+-A`` whose first nonzero entry is positive."""
    flat = [A[0][0], A[0][1], A[1][0], A[1][1]]
    first = next(x for x in flat if x)
    if first < 0:
        return ((-A[0][0], -A[0][1]), (-A[1][0], -A[1][1]))
    return (tuple(A[0]), tuple(A[1]))


# ------------------------------------------------------------ moves


@dataclass(frozen=True)
class Move:
    tag: str  # "T" | "S" | "F" | "R" | "M"
    deck: GroupElement | None = None
    psi: GroupAutomorphism | None = None

    def __post_init__(self):
        if self.tag not in ("T", "S", "F", "R", "M"):
            raise InvalidInput(f"unknown move {self.tag!r}")
        if (self.tag == "R") != (self.deck is not None) or (self.tag == "M") != (self.psi is not None):
            raise InvalidInput(f"move {self.tag} has the wrong parameters")

    @property
    def derivative(self) -> Matrix2:
        return {"T": D_T, "S": D_S}.get(self.tag, D_ID)

    def label(self) -> str:
        if self.tag == "R":
            return f"r[{self.deck}]"
        if self.tag == "M":
            return f"m[{self.psi}]"
        return self.tag.lower()


T, S, F = Move("T"), Move("S"), Move("F")


def move_source(move: Move, target: BranchTuple) -> BranchTuple:
    h1, h2, h3, h4 = target.elements
    G = target.group
    if move.tag == "T":
        return BranchTuple(G, (h2, h3, h4, h1))
    if move.tag == "S":
        return BranchTuple(G, (h2, h1, h3, h4))
    if move.tag == "F":
        return BranchTuple(G, (h2, h1, h4, h3))
    if move.tag == "R":
        return target
    inv = move.psi.inverse()
    return BranchTuple(G, tuple(inv(h) for h in target))


def move_target(move: Move, source: BranchTuple) -> BranchTuple:
    w1, w2, w3, w4 = source.elements
    G = source.group
    if move.tag == "T":
        return BranchTuple(G, (w4, w1, w2, w3))
    if move.tag == "S":
        return BranchTuple(G, (w2, w1, w3, w4))
    if move.tag == "F":
        return BranchTuple(G, (w2, w1, w4, w3))
    if move.tag == "R":
        return source
    return BranchTuple(G, tuple(move.psi(w) for w in source))


def ring_pullback(move: Move, target: BranchTuple) -> list[list[GroupRingElement]]:
    """4x4 matrix over Z[G] of the pullback along ``move`` into ``target``."""
    G = target.group
    h1, h2, h3, h4 = target.elements
    Z = GroupRingElement.zero(G)
    one = GroupRingElement.one(G)

    def el(g, c=1):
        return GroupRingElement.of(g, c)

    if move.tag == "T":
        P = [[Z] * 4 for _ in range(4)]
        for i in range(4):
            P[i][(i + 1) % 4] = one
        return P
    if move.tag == "S":
        return [[el(h1, -1), Z, Z, Z],
                [one, one, Z, Z],
                [Z, Z, one, Z],
                [el(h1), Z, Z, one]]
    if move.tag == "F":
        return [[-one, Z, Z, Z],
                [Z, Z, Z, el(h2 + h3 + h4, -1)],
                [Z, Z, el(h2 + h3, -1), Z],
                [Z, el(h2, -1), Z, Z]]
    if move.tag == "R":
        return [[el(move.deck) if i == j else Z for j in range(4)] for i in range(4)]
    raise InvalidInput("m-moves act on characters, not through a Z[G] matrix")


def ring_pullback_inverse(move: Move, target: BranchTuple) -> list[list[GroupRingElement]]:
    G = target.group
    h1, h2, h3, h4 = target.elements
    Z = GroupRingElement.zero(G)
    one = GroupRingElement.one(G)

    def el(g, c=1):
        return GroupRingElement.of(g, c)

    if move.tag == "T":
        P = [[Z] * 4 for _ in range(4)]
        for i in range(4):
            P[(i + 1) % 4][i] = one
        return P
    if move.tag == "S":
        return [[el(-h1, -1), Z, Z, Z],
                [el(-h1), one, Z, Z],
                [Z, Z, one, Z],
                [one, Z, Z, one]]
    if move.tag == "F":
        return [[-one, Z, Z, Z],
                [Z, Z, Z, el(-h2, -1)],
                [Z, Z, el(-(h2 + h3), -1), Z],
                [Z, el(-(h2 + h3 + h4), -1), Z, Z]]
    if move.tag == "R":
        return [[el(-move.deck) if i == j else Z for j in range(4)] for i in range(4)]
    raise InvalidInput("m-moves act on characters, not through a Z[G] matrix")


def _identity4(N: int):
    Fd = cyc_field(N)
    return [[Fd.one() if i == j else Fd.zero() for j in range(4)] for i in range(4)]


def scalar_pullback(move: Move, target: BranchTuple, rho: Character, N: int | None = None,
                    inverse: bool = False) -> list[list[Cyclotomic]]:
    """Pullback in D-coordinates for the character ``rho`` on the target summand."""
    N = N or character_field_order(rho)
    if move.tag == "M":
        return _identity4(N)
    P = ring_pullback_inverse(move, target) if inverse else ring_pullback(move, target)
    return ring_matrix_evaluate(P, rho, N)


# ------------------------------------------------------------ graph


@dataclass(frozen=True)
class Edge:
    source: BranchTuple
    move: Move
    target: BranchTuple

    def export(self) -> str:
        return f"{self.source} | {self.move.label()} | {self.target}"


@dataclass(frozen=True)
class Step:
    edge: Edge
    forward: bool

    @property
    def start(self) -> BranchTuple:
        return self.edge.source if self.forward else self.edge.target

    @property
    def end(self) -> BranchTuple:
        return self.edge.target if self.forward else self.edge.source

    def reversed(self) -> "Step":
        return Step(self.edge, not self.forward)

    def label(self) -> str:
        e = self.edge
        sub = f"{e.move.label()}_{e.target}"
        return sub if self.forward else sub + "^-1"


@dataclass
class TupleGraph:
    group: AbelianGroup
    base: BranchTuple
    include_m: bool
    vertices: list[BranchTuple]
    edges: list[Edge]
    parent: dict[BranchTuple, Step | None]
    automorphisms: list[GroupAutomorphism] = field(default_factory=list)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def tree_path(self, v: BranchTuple) -> list[Step]:
        """Steps from the base to ``v`` along the spanning tree."""
        steps = []
        while self.parent[v] is not None:
            st = self.parent[v]
            steps.append(st)
            v = st.start
        return steps[::-1]

    def tree_edges(self) -> set[Edge]:
        return {st.edge for st in self.parent.values() if st is not None}

    def export(self) -> str:
        return "\n".join(e.export() for e in self.edges) + "\n"


def build_tuple_graph(G: AbelianGroup, base: BranchTuple, include_m: bool = False,
                      bound: int = DEFAULT_GRAPH_BOUND) -> TupleGraph:
    base.validate()
    moves = [T, S, F]
    autos: list[GroupAutomorphism] = []
    if include_m:
        autos = enumerate_automorphisms(G)
        moves += [Move("M", psi=psi) for psi in autos if not psi.is_identity()]
    parent: dict[BranchTuple, Step | None] = {base: None}
    order = [base]
    edges: list[Edge] = []
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for mv in moves:
            # out-edge v -> target and in-edge source -> v
            out = Edge(v, mv, move_target(mv, v))
            inc = Edge(move_source(mv, v), mv, v)
            edges.append(inc)
            for step in (Step(out, True), Step(inc, False)):
                w = step.end
                if w not in parent:
                    parent[w] = step
                    order.append(w)
                    queue.append(w)
                    if len(order) > bound:
                        raise CapabilityError(f"tuple graph exceeds {bound} vertices")
    return TupleGraph(G, base, include_m, order, edges, parent, autos)


# ------------------------------------------------------------ words


@dataclass
class AffineWord:
    base: BranchTuple
    steps: list[Step]
    name: str = ""

    def __post_init__(self):
        cur = self.base
        for st in self.steps:
            if st.start != cur:
                raise InvalidInput(f"word is not a path: step {st.label()} starts at {st.start}, not {cur}")
            cur = st.end

    @property
    def end(self) -> BranchTuple:
        return self.steps[-1].end if self.steps else self.base

    def is_loop(self) -> bool:
        return self.end == self.base

    def __mul__(self, other: "AffineWord") -> "AffineWord":
        """Path concatenation: ``self`` first, then ``other``."""
        return AffineWord(self.base, self.steps + other.steps)

    def inverse(self) -> "AffineWord":
        return AffineWord(self.end, [st.reversed() for st in reversed(self.steps)])

    def export(self) -> str:
        return " ".join(st.label() for st in self.steps) or "id"

    def deck_automorphism(self) -> GroupAutomorphism:
        psi = GroupAutomorphism.identity(self.base.group)
        for st in self.steps:
            if st.edge.move.tag == "M":
                m = st.edge.move.psi if st.forward else st.edge.move.psi.inverse()
                psi = m.compose(psi)
        return psi

    def ring_pullback(self) -> list[list[GroupRingElement]]:
        """Pullback over Z[G] for words without m-moves."""
        G = self.base.group
        Z, one = GroupRingElement.zero(G), GroupRingElement.one(G)
        P = [[one if i == j else Z for j in range(4)] for i in range(4)]
        for st in self.steps:
            e = st.edge
            Q = ring_pullback(e.move, e.target) if st.forward else ring_pullback_inverse(e.move, e.target)
            P = ring_matmul(P, Q)
        return P

    def characters_along(self, rho: Character) -> list[Character]:
        """Character on the summand at each vertex w0..wk, given ``rho`` at the end."""
        chars = [rho]
        for st in reversed(self.steps):
            cur = chars[-1]
            mv = st.edge.move
            if mv.tag == "M":
                cur = cur.compose(mv.psi) if st.forward else cur.compose(mv.psi.inverse())
            chars.append(cur)
        return chars[::-1]

    def pullback(self, rho: Character, N: int | None = None) -> tuple[list[list[Cyclotomic]], Character]:
        """4x4 D-coordinate pullback from ``H1(rho)`` at the end to the returned summand at the start."""
        chars = self.characters_along(rho)
        N = N or max(character_field_order(c) for c in chars)
        P = _identity4(N)
        for i, st in enumerate(self.steps):
            e = st.edge
            if e.move.tag != "M":
                # only m-edges change the character, so chars[i + 1] is the one on both ends
                Q = scalar_pullback(e.move, e.target, chars[i + 1], N, inverse=not st.forward)
                P = matmul(P, Q)
        return P, chars[0]


def word_derivative(word: AffineWord) -> Matrix2:
    D = D_ID
    for st in word.steps:
        d = st.edge.move.derivative
        D = _mul2(D, d if st.forward else _inv2(d))
    return projective_class(D)


def deck_loop(base: BranchTuple, g: GroupElement) -> AffineWord:
    e = Edge(base, Move("R", deck=g), base)
    return AffineWord(base, [Step(e, True)], name=f"r[{g}]")


def affine_generators(graph: TupleGraph) -> list[AffineWord]:
    """Loops at the base: one per non-tree edge, plus deck loops."""
    tree = graph.tree_edges()
    words = []
    seen = set()
    for e in graph.edges:
        if e in tree or e in seen:
            continue
        seen.add(e)
        to_src = graph.tree_path(e.source)
        back = [st.reversed() for st in reversed(graph.tree_path(e.target))]
        w = AffineWord(graph.base, to_src + [Step(e, True)] + back)
        w.name = f"loop via {e.export()}"
        words.append(w)
    for g in primary_generators(graph.group):
        words.append(deck_loop(graph.base, g))
    return words


def random_loop_words(generators: Sequence[AffineWord], count: int, max_length: int = 6,
                      rng: random.Random | None = None) -> list[AffineWord]:
    rng = rng or random.Random(0)
    out = []
    for _ in range(count):
        base = generators[0].base
        w = AffineWord(base, [])
        for _ in range(rng.randint(1, max_length)):
            g = rng.choice(generators)
            w = w * (g if rng.random() < 0.5 else g.inverse())
        out.append(w)
    return out


def induced_matrix(P: Sequence[Sequence[Any]], source: IsotypicSummand, target: IsotypicSummand) -> list[list[Any]]:
    """Matrix of ``P`` from the target basis to the source basis (columns = images)."""
    if len(P) != 4:
        raise InvalidInput("pullback must be 4x4")
    cols = []
    for v in target.basis:
        img = [sum((P[i][k] * v[k] for k in range(4)), 0) for i in range(4)]
        c = solve_in_span(source.basis, img)
        if c is None:
            raise ConsistencyError("pullback leaves the summand")
        cols.append(c)
    k = len(source.basis)
    return [[cols[j][i] for j in range(len(cols))] for i in range(k)]


def pullback_matrix(word_or_move, rho: Character, source: IsotypicSummand, target: IsotypicSummand,
                    target_tuple: BranchTuple | None = None):
    """Pullback as (4x4 D-coordinate matrix, induced matrix on the bases)."""
    if target.character != rho:
        raise InvalidInput("basis mismatch: target summand is not H1(rho)")
    if isinstance(word_or_move, Move):
        if target_tuple is None:
            raise InvalidInput("a single move needs its target tuple")
        P = scalar_pullback(word_or_move, target_tuple, rho)
        start = rho.compose(word_or_move.psi) if word_or_move.tag == "M" else rho
    else:
        P, start = word_or_move.pullback(rho)
    if source.character != start:
        raise InvalidInput(f"basis mismatch: source summand should belong to {start}")
    return P, induced_matrix(P, source, target)


# ------------------------------------------------------------ gamma words


def gamma_one(tuple_: BranchTuple) -> AffineWord:
    g1, g2, g3, g4 = tuple_.elements
    G = tuple_.group
    mid = BranchTuple(G, (g2, g1, g3, g4))
    e1 = Edge(tuple_, S, mid)       # s with target (g2, g1, g3, g4)
    e2 = Edge(mid, S, tuple_)       # s with target g
    return AffineWord(tuple_, [Step(e1, True), Step(e2, True)], name="gamma1")


def gamma_two(tuple_: BranchTuple) -> AffineWord:
    g1, g2, g3, g4 = tuple_.elements
    G = tuple_.group
    u = BranchTuple(G, (g2, g3, g4, g1))
    w = BranchTuple(G, (g3, g2, g4, g1))
    t_edge = Edge(u, T, tuple_)
    return AffineWord(tuple_, [Step(t_edge, False), Step(Edge(u, S, w), True),
                               Step(Edge(w, S, u), True), Step(t_edge, True)], name="gamma2")


def gamma_closed_forms(tuple_: BranchTuple) -> tuple[list, list]:
    """The Z[G] matrices of the two Dehn-twist lifts written out by hand."""
    G = tuple_.group
    g1, g2, g3, _ = tuple_.elements
    Z, one = GroupRingElement.zero(G), GroupRingElement.one(G)

    def el(g, c=1):
        return GroupRingElement.of(g, c)

    # gamma1*: (g1g2 a, b + a - g1 a, c, d + g1 a - g1g2 a)
    G1 = [[el(g1 + g2), Z, Z, Z],
          [one - el(g1), one, Z, Z],
          [Z, Z, one, Z],
          [el(g1) - el(g1 + g2), Z, Z, one]]
    # gamma2*: (a + g2 b - g2g3 b, g2g3 b, c + b - g2 b, d)
    G2 = [[one, el(g2) - el(g2 + g3), Z, Z],
          [Z, el(g2 + g3), Z, Z],
          [Z, one - el(g2), one, Z],
          [Z, Z, Z, one]]
    return G1, G2


def gamma_restricted_forms(tuple_: BranchTuple, rho: Character, N: int | None = None):
    """The per-character closed forms (rho evaluated)."""
    G1, G2 = gamma_closed_forms(tuple_)
    return ring_matrix_evaluate(G1, rho, N), ring_matrix_evaluate(G2, rho, N)


@dataclass
class GammaOneGenerators:
    gamma1: AffineWord
    gamma2: AffineWord
    closed1: list
    closed2: list


def gamma_generators(G: AbelianGroup, tuple_: BranchTuple,
                     characters: Iterable[Character] | None = None) -> GammaOneGenerators:
    """Both Dehn-twist lifts; composed pullbacks are checked against the closed forms."""
    w1, w2 = gamma_one(tuple_), gamma_two(tuple_)
    c1, c2 = gamma_closed_forms(tuple_)
    for w, c in ((w1, c1), (w2, c2)):
        got = w.ring_pullback()
        if got != c:
            raise ConsistencyError(f"{w.name} composed pullback {got} differs from its closed form {c}")
    for rho in characters or ():
        r1, r2 = gamma_restricted_forms(tuple_, rho)
        for w, c in ((w1, r1), (w2, r2)):
            P, _ = w.pullback(rho)
            if P != c:
                raise ConsistencyError(f"{w.name} on H1({rho}) differs from its closed form")
    return GammaOneGenerators(w1, w2, c1, c2)


def restricted_action(word: AffineWord, summand: IsotypicSummand) -> list[list[Cyclotomic]]:
    P, chi = word.pullback(summand.character, summand.N)
    if chi != summand.character:
        raise InvalidInput("word moves the summand to a different character")
    return induced_matrix(P, summand, summand)


def is_projectively_parabolic(M2: Sequence[Sequence[Cyclotomic]]) -> bool:
    """A 2x2 matrix acts parabolically iff it is not scalar and has a repeated eigenvalue."""
    a, b = M2[0]
    c, d = M2[1]
    if b == 0 and c == 0 and a == d:
        return False
    disc = (a - d) * (a - d) + 4 * b * c
    return disc == 0


def is_identity_action(M: Sequence[Sequence[Any]]) -> bool:
    return all((M[i][j] == (1 if i == j else 0)) for i in range(len(M)) for j in range(len(M)))


# ------------------------------------------------------------ Aff vs Gamma


def aff_equals_gamma_sufficient(G: AbelianGroup, tuple_: BranchTuple) -> str:
    orders = tuple_.orders
    if len(set(orders)) == 4:
        return "Yes-byOrders"
    if G.rank == 1 and G.order >= 4:
        n = G.order
        c = [g.coords[0] for g in tuple_]
        for u in range(1, n):
            if gcd(u, n) == 1 and all((u * x - y) % n == 0 for x, y in zip((1, 1, 1, n - 3), c)):
                return "Yes-byCyclicForm"
    return "Unknown"


@dataclass
class RealizedAutomorphisms:
    automorphisms: list[GroupAutomorphism]
    # character dual coords -> image under rho |-> rho o psi^{-1}, per realized psi
    permutations: dict[str, dict[tuple[int, ...], tuple[int, ...]]]


def realized_automorphisms(graph: TupleGraph) -> RealizedAutomorphisms:
    """Automorphisms arising as the deck part of a loop at the base.

    A loop can use m-edges freely, so ``psi`` is realized iff ``psi(base)``
    lies in the T/S/F-component of the base.
    """
    if not graph.include_m:
        raise InvalidInput("realized_automorphisms needs a graph built with m-edges")
    G = graph.group
    component = build_tuple_graph(G, graph.base, include_m=False)
    comp = set(component.vertices)
    autos = graph.automorphisms or enumerate_automorphisms(G)
    realized = [psi for psi in autos if BranchTuple(G, tuple(psi(h) for h in graph.base)) in comp]
    perms = {}
    for psi in realized:
        inv = psi.inverse()
        perms[str(psi)] = {rho.dual_coords: rho.compose(inv).dual_coords for rho in enumerate_characters(G)}
    return RealizedAutomorphisms(realized, perms)

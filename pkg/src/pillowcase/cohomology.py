"""Relative cochains of (M, Sigma), the coboundary, and the isotypic summands H1(rho).

Packing: a 1-cochain ``m`` becomes four group-algebra elements
``a = sum_g m(e^1_g) g^{-1}`` (and likewise b, c, d from e^2, e^3, e^4).
A ``CochainVector`` stores the coefficient tables, so ``a[x] = m(e^1_{-x})``.
Multiplication by ``h`` shifts a table: ``(h.a)[x] = a[x - h]``.

On the rho-isotypic part an element is ``v * sum_x conj(rho(x)) x`` and ``h``
acts by the scalar ``rho(h)``. Such a vector ``(a, b, c, d)`` of scalars is
what we call D-coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .abelian import (AbelianGroup, Character, GroupElement, enumerate_characters,
                      subgroup_elements)
from .cyclotomic import Cyclotomic, field as cyc_field, root_of_unity
from .errors import ConsistencyError
from .linalg import kernel, rank
from .surface import BranchTuple

Vector = list[Any]


# ------------------------------------------------------------ scalars


def character_field_order(rho: Character) -> int:
    """Cyclotomic level used for ``rho``: must contain rho's values and i."""
    n = rho.order
    return n * 4 // math.gcd(n, 4)


def rho_scalar(rho: Character, g: GroupElement, N: int | None = None) -> Cyclotomic:
    return root_of_unity(rho(g).value, N or character_field_order(rho))


def tuple_values(tuple_: BranchTuple, rho: Character, N: int | None = None) -> tuple[Cyclotomic, ...]:
    """``(rho(g1), rho(g2), rho(g3), rho(g4))`` as exact cyclotomic numbers."""
    N = N or character_field_order(rho)
    return tuple(rho_scalar(rho, g, N) for g in tuple_)


def constraint_rows(tuple_: BranchTuple, rho: Character, N: int | None = None) -> list[list[Cyclotomic]]:
    """The two linear conditions cutting H1(rho) out of D-coordinates."""
    N = N or character_field_order(rho)
    _, r2, r3, r4 = tuple_values(tuple_, rho, N)
    one = cyc_field(N).one()
    return [[one, one, one, one], [one, r2, r2 * r3, r2 * r3 * r4]]


# ------------------------------------------------------------ group ring


class GroupRingElement:
    """Finitely supported integer combination of group elements."""

    __slots__ = ("group", "terms")

    def __init__(self, group: AbelianGroup, terms: dict[tuple[int, ...], int] | None = None):
        self.group = group
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def of(cls, g: GroupElement, coeff: int = 1) -> "GroupRingElement":
        return cls(g.group, {g.coords: coeff})

    @classmethod
    def zero(cls, G: AbelianGroup) -> "GroupRingElement":
        return cls(G)

    @classmethod
    def one(cls, G: AbelianGroup) -> "GroupRingElement":
        return cls(G, {G.identity.coords: 1})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return GroupRingElement(self.group, t)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        m = self.group.moduli
        t: dict[tuple[int, ...], int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple((x + y) % n for x, y, n in zip(k1, k2, m))
                t[k] = t.get(k, 0) + v1 * v2
        return GroupRingElement(self.group, t)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, rho: Character, N: int | None = None) -> Cyclotomic:
        N = N or character_field_order(rho)
        terms: dict[int, Fraction] = {}
        for k, v in self.terms.items():
            t = rho(GroupElement(self.group, k)).value
            e = t.numerator * (N // t.denominator)
            terms[e] = terms.get(e, 0) + v
        return cyc_field(N).from_exponents(terms)

    def __repr__(self) -> str:
        return " + ".join(f"{v}*{k}" for k, v in sorted(self.terms.items())) or "0"


def ring_matrix_evaluate(P: Sequence[Sequence[GroupRingElement]], rho: Character,
                         N: int | None = None) -> list[list[Cyclotomic]]:
    return [[x.evaluate(rho, N) for x in row] for row in P]


def ring_matmul(A, B):
    n = len(A)
    G = A[0][0].group
    return [[sum((A[i][k] * B[k][j] for k in range(n)), GroupRingElement.zero(G)) for j in range(n)]
            for i in range(n)]


# ------------------------------------------------------------ cochains


@dataclass
class CochainVector:
    """Four coefficient tables ``G -> scalar`` (a, b, c, d)."""

    group: AbelianGroup = field(repr=False)
    tables: tuple[dict[GroupElement, Any], dict[GroupElement, Any], dict[GroupElement, Any], dict[GroupElement, Any]]

    @classmethod
    def zero(cls, G: AbelianGroup, zero: Any = 0) -> "CochainVector":
        return cls(G, tuple({g: zero for g in G.elements()} for _ in range(4)))

    @classmethod
    def from_edge_values(cls, G: AbelianGroup, value: Callable[[int, GroupElement], Any]) -> "CochainVector":
        """Pack edge values ``value(j, g) = m(e^j_g)`` (j = 1..4)."""
        return cls(G, tuple({x: value(j, -x) for x in G.elements()} for j in range(1, 5)))

    def edge_value(self, j: int, g: GroupElement) -> Any:
        return self.tables[j - 1][-g]

    def scaled(self, s) -> "CochainVector":
        return CochainVector(self.group, tuple({x: s * v for x, v in t.items()} for t in self.tables))


def shift(table: dict[GroupElement, Any], h: GroupElement) -> dict[GroupElement, Any]:
    """Coefficient table of ``h * A``."""
    return {x: table[x - h] for x in table}


def coboundary(G: AbelianGroup, tuple_: BranchTuple, m: CochainVector) -> tuple[dict, dict]:
    """``(a+b+c+d, a + g2 b + g2g3 c + g2g3g4 d)`` as coefficient tables.

    The value of the first table at ``-g`` is the boundary sum over ``B1_g``;
    the second table at ``-g`` is minus the boundary sum over ``B2_g``.
    """
    a, b, c, d = m.tables
    _, g2, g3, g4 = tuple_.elements
    sb, sc, sd = shift(b, g2), shift(c, g2 + g3), shift(d, g2 + g3 + g4)
    first = {x: a[x] + b[x] + c[x] + d[x] for x in G.elements()}
    second = {x: a[x] + sb[x] + sc[x] + sd[x] for x in G.elements()}
    return first, second


def square_residuals(G: AbelianGroup, tuple_: BranchTuple, m: CochainVector) -> dict[tuple[int, GroupElement], Any]:
    """Signed boundary sum of ``m`` over every square, keyed by (level, g)."""
    first, second = coboundary(G, tuple_, m)
    out = {}
    for g in G.elements():
        out[(1, g)] = first[-g]
    for g in G.elements():
        out[(2, g)] = -second[-g]
    return out


def lift_to_cochain(G: AbelianGroup, rho: Character, v: Sequence[Any],
                    value: Callable[[Character, GroupElement], Any]) -> CochainVector:
    """Cochain with D-coordinates ``v``: ``table_j[x] = v_j * conj(rho(x))``.

    ``value(rho, x)`` returns ``rho(x)`` in the caller's scalar backend.
    """
    tables = []
    for vj in v:
        tables.append({x: vj * value(rho, -x) for x in G.elements()})
    return CochainVector(G, tuple(tables))


# ------------------------------------------------------------ summands


@dataclass
class IsotypicSummand:
    character: Character
    N: int
    values: tuple[Cyclotomic, ...]  # rho(g1..g4)
    basis: list[Vector]
    ha: Vector | None = None
    ha_prime: Vector | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _trivial_basis(N: int) -> list[Vector]:
    F = cyc_field(N)
    one, zero = F.one(), F.zero()
    return [[one, -one, zero, zero], [zero, one, -one, zero], [zero, zero, one, -one]]


def ha_vector(values: Sequence[Cyclotomic]) -> Vector:
    """Spans {c = 0} inside H1(rho) when rho(g1 g2) != 1."""
    r1, r2, _, _ = values
    r1i = r1.conjugate()
    zero = r1 - r1
    return [r2 - r1i, r1i - 1, zero, 1 - r2]


def ha_prime_vector(values: Sequence[Cyclotomic]) -> Vector:
    """Spans {a = 0} inside H1(rho) when rho(g1 g2) != 1."""
    _, r2, r3, r4 = values
    r23 = r2 * r3
    r234 = r23 * r4
    return [r2 - r2, r234 - r23, r2 - r234, r23 - r2]


def isotypic_basis(G: AbelianGroup, tuple_: BranchTuple, rho: Character) -> IsotypicSummand:
    N = character_field_order(rho)
    values = tuple_values(tuple_, rho, N)
    F = cyc_field(N)
    if rho.is_trivial():
        return IsotypicSummand(rho, N, values, _trivial_basis(N))
    r1, r2 = values[0], values[1]
    if r1 * r2 != 1:
        ha, hap = ha_vector(values), ha_prime_vector(values)
        return IsotypicSummand(rho, N, values, [ha, hap], ha, hap)
    basis = kernel(constraint_rows(tuple_, rho, N), 4, one=F.one(), zero=F.zero())
    if len(basis) != 2:  # pragma: no cover - impossible for a generating tuple
        raise ConsistencyError(f"H1({rho}) has dimension {len(basis)}, expected 2")
    return IsotypicSummand(rho, N, values, basis)


def summand_dimension(tuple_: BranchTuple, rho: Character) -> int:
    """``4 - rank`` of the two constraints, computed by exact elimination."""
    return 4 - rank(constraint_rows(tuple_, rho))


def total_dimension(G: AbelianGroup, tuple_: BranchTuple) -> int:
    return sum(summand_dimension(tuple_, rho) for rho in enumerate_characters(G))


def satisfies_constraints(tuple_: BranchTuple, rho: Character, v: Vector) -> bool:
    rows = constraint_rows(tuple_, rho)
    return all(sum((r * x for r, x in zip(row, v)), 0) == 0 for row in rows)


# ------------------------------------------------------------ restriction map


# rel vector (coboundary of the point class) when rho(g_j) = 1, j = 1..4
_REL_VECTORS = {1: (1, 0, 0, -1), 2: (1, -1, 0, 0), 3: (0, 1, -1, 0), 4: (0, 0, 1, -1)}


@dataclass(frozen=True)
class RestrictionClass:
    case: str  # "Case1" | "Case2" | "Case3"
    unit_count: int
    abs_dim: int
    split: bool
    kernel_basis: tuple[tuple[int, ...], ...]
    distinguished_index: int | None = None
    # cyclic relabelling taking the normal form with the unit at g2 to ours
    index_permutation: tuple[int, ...] | None = None


def restriction_classify(tuple_: BranchTuple, rho: Character) -> RestrictionClass:
    units = [j + 1 for j, g in enumerate(tuple_) if rho(g).is_zero()]
    n1 = len(units)
    if n1 in (2, 4):
        dim_rel = 3 if rho.is_trivial() else 2
        basis = ((1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1))[:dim_rel] if rho.is_trivial() else ()
        return RestrictionClass("Case1", n1, 0, True, basis)
    if n1 == 1:
        j = units[0]
        perm = tuple((i + j - 2) % 4 + 1 for i in range(4))
        return RestrictionClass("Case2", 1, 1, False, (_REL_VECTORS[j],), j, perm)
    if n1 == 0:
        return RestrictionClass("Case3", 0, 2, True, ())
    raise ConsistencyError(f"{n1} of the four values equal 1, impossible for a zero-sum tuple")  # pragma: no cover


def _quotient_is_klein(G: AbelianGroup, sub: set[GroupElement]) -> bool:
    if G.order != 4 * len(sub):
        return False
    # exponent two quotient of order four
    return all((2 * x) in sub for x in G.elements())


def subgroup_criterion(G: AbelianGroup, tuple_: BranchTuple) -> tuple[bool, list[str]]:
    """Group-theoretic test: for each i, <g_i> holds another g_j or G/<g_i> is Klein four."""
    reasons = []
    ok = True
    for i, gi in enumerate(tuple_):
        sub = subgroup_elements(G, [gi])
        hit = [j + 1 for j, gj in enumerate(tuple_) if j != i and gj in sub]
        if hit:
            reasons.append(f"<g{i + 1}> contains g{hit[0]}")
        elif _quotient_is_klein(G, sub):
            reasons.append(f"G/<g{i + 1}> is Klein four")
        else:
            reasons.append(f"g{i + 1} fails")
            ok = False
    return ok, reasons


@dataclass
class RelSplitVerdict:
    splits: bool
    witness: Character | None
    certificate: list[str]


def global_rel_split(G: AbelianGroup, tuple_: BranchTuple) -> RelSplitVerdict:
    witness = None
    for rho in enumerate_characters(G):
        if restriction_classify(tuple_, rho).case == "Case2":
            witness = rho
            break
    by_chars = witness is None
    by_groups, reasons = subgroup_criterion(G, tuple_)
    if by_chars != by_groups:
        raise ConsistencyError(
            f"rel-split criteria disagree on {tuple_}: character scan says {by_chars} "
            f"(witness {witness}), subgroup test says {by_groups} ({reasons})")
    return RelSplitVerdict(by_chars, witness, reasons)

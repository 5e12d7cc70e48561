"""The invariant area form on H1(rho): Gram matrices, signatures, projective
geometry, triangle data, finiteness tables and discreteness verdicts.

All classification is done on rational turns ``t_j`` with
``rho(g_j) = exp(2 pi i t_j)`` and ``0 <= t_j < 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .abelian import (AbelianGroup, Character, RationalTurn, character_from_turns,
                      enumerate_abelian_groups, enumerate_automorphisms, enumerate_characters,
                      generates)
from .affine import (aff_equals_gamma_sufficient, build_tuple_graph, realized_automorphisms)
from .cohomology import IsotypicSummand, isotypic_basis
from .cyclotomic import Cyclotomic, field as cyc_field
from .errors import CapabilityError, DomainError, InvalidInput
from .linalg import conj_transpose, matmul
from .surface import BranchTuple

DEFAULT_SQUARE_CAP = 64


def turns_of(tuple_: BranchTuple, rho: Character) -> tuple[Fraction, ...]:
    return tuple(rho(g).value for g in tuple_)


# ------------------------------------------------------------ forms


@dataclass
class HermitianForm:
    matrix: list[list[Cyclotomic]]
    N: int

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def is_hermitian(self) -> bool:
        return self.matrix == conj_transpose(self.matrix)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def evaluate(self, x, y) -> Cyclotomic:
        """Form value ``A(x, y) = y^H H x`` on basis coordinates."""
        n = self.dimension
        return sum((y[i].conjugate() * self.matrix[i][j] * x[j] for i in range(n) for j in range(n)),
                   cyc_field(self.N).zero())


def area_kernel(G: AbelianGroup, values: Sequence[Cyclotomic], N: int) -> list[list[Cyclotomic]]:
    """4x4 matrix ``K`` with ``A(v, w) = w^H K v`` in D-coordinates.

    Comes from the cup-product formula for cochains lifted as
    ``table[x] = v * conj(rho(x))``; such a lift has (., .)_G norm ``|G| |v|^2``.
    """
    Fd = cyc_field(N)
    zero = Fd.zero()
    i = Fd.zeta_power(N // 4)
    c = (-i) * Fraction(G.order, 4)  # |G| / (4i)
    r2, r4 = values[1], values[3]
    K = [[zero] * 4 for _ in range(4)]
    K[0][1] = c * (1 - r2)
    K[1][0] = -c * (1 - r2.conjugate())
    K[2][3] = c * (1 - r4)
    K[3][2] = -c * (1 - r4.conjugate())
    return K


def hodge_gram(G: AbelianGroup, tuple_: BranchTuple, rho: Character,
               summand: IsotypicSummand | None = None) -> HermitianForm:
    """Gram matrix ``H[i][j] = A(v_j, v_i)`` on the summand basis."""
    summand = summand or isotypic_basis(G, tuple_, rho)
    K = area_kernel(G, summand.values, summand.N)
    V = [[summand.basis[j][i] for j in range(summand.dimension)] for i in range(4)]
    H = matmul(conj_transpose(V), matmul(K, V))
    return HermitianForm(H, summand.N)


@dataclass(frozen=True)
class Signature:
    n0: int
    n_plus: int
    n_minus: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n0, self.n_plus, self.n_minus)

    def __str__(self) -> str:
        return f"({self.n0},{self.n_plus},{self.n_minus})"


def signature_exact(tuple_: BranchTuple, rho: Character) -> Signature:
    """Closed-form signature from the four turns."""
    if rho.is_trivial():
        raise DomainError("the area form vanishes on the trivial summand")
    t = turns_of(tuple_, rho)
    n0 = sum(1 for x in t if x == 0)
    total = sum(t)
    n_minus = total - 1
    n_plus = (4 - n0 - total) - 1
    if n_minus.denominator != 1 or n_plus.denominator != 1:  # pragma: no cover - zero-sum tuples give integer sums
        raise DomainError(f"turn sum {total} is not an integer")
    return Signature(n0, int(n_plus), int(n_minus))


def signature_of_form(form: HermitianForm) -> Signature:
    """Exact signature of a 2x2 (or zero) Hermitian Gram matrix."""
    H = form.matrix
    if form.is_zero():
        return Signature(form.dimension, 0, 0)
    if form.dimension != 2:
        raise DomainError("exact signature implemented for 2x2 forms only")
    det = H[0][0] * H[1][1] - H[0][1] * H[1][0]
    tr = H[0][0] + H[1][1]
    sd = det.real_sign()
    if sd < 0:
        return Signature(0, 1, 1)
    if sd > 0:
        return Signature(0, 2, 0) if tr.real_sign() > 0 else Signature(0, 0, 2)
    return Signature(1, 1, 0) if tr.real_sign() > 0 else Signature(1, 0, 1)


@dataclass(frozen=True)
class GeometryClass:
    tag: str  # Trivial | Degenerate | Euclidean | Spherical | Hyperbolic
    sign: int = 0

    def __str__(self) -> str:
        if self.tag in ("Euclidean", "Spherical"):
            return f"{self.tag}({'+' if self.sign > 0 else '-'})"
        return self.tag


def geometry_from_signature(sig: Signature) -> GeometryClass:
    if sig.n0 >= 2:
        return GeometryClass("Degenerate")
    if sig.n0 == 1:
        return GeometryClass("Euclidean", 1 if sig.n_plus else -1)
    if sig.n_plus == 2 or sig.n_minus == 2:
        return GeometryClass("Spherical", 1 if sig.n_plus == 2 else -1)
    return GeometryClass("Hyperbolic")


def geometry_class(tuple_: BranchTuple, rho: Character) -> GeometryClass:
    if rho.is_trivial():
        return GeometryClass("Trivial")
    return geometry_from_signature(signature_exact(tuple_, rho))


# ------------------------------------------------------------ triangles


@dataclass(frozen=True)
class TriangleData:
    angles: tuple[Fraction, Fraction, Fraction]  # multiples of pi
    vertex_types: tuple[str, str, str]  # "elliptic" | "parabolic"
    rotation_turns: tuple[Fraction, Fraction, Fraction]
    geometry: str

    @property
    def angle_sum(self) -> Fraction:
        return sum(self.angles)

    def angle_multiset(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.angles))


def _geometry_from_angle_sum(s: Fraction) -> str:
    return "Spherical" if s > 1 else ("Euclidean" if s == 1 else "Hyperbolic")


def triangle_data(tuple_: BranchTuple, rho: Character) -> TriangleData:
    geo = geometry_class(tuple_, rho)
    if geo.tag in ("Trivial", "Degenerate"):
        raise DomainError(f"no triangle for {geo} geometry")
    t = turns_of(tuple_, rho)
    pairs = ((0, 1), (1, 2), (0, 2))
    rot = tuple((t[a] + t[b]) % 1 for a, b in pairs)
    if geo.tag == "Euclidean":
        rest = [x for x in t if x != 0]
        angles = tuple(rest) if sum(rest) == 1 else tuple(1 - x for x in rest)
        types = ("elliptic",) * 3
    else:
        angles = tuple(abs(1 - (t[a] + t[b])) for a, b in pairs)
        types = tuple("parabolic" if r == 0 else "elliptic" for r in rot)
    data = TriangleData(angles, types, rot, _geometry_from_angle_sum(sum(angles)))
    if data.geometry != geo.tag:  # pragma: no cover - the angle sum follows from the turn sum
        raise DomainError(f"angle sum {sum(angles)} contradicts {geo}")
    return data


# ------------------------------------------------------------ tables


@dataclass(frozen=True)
class TableRow:
    total: int
    turns: tuple[Fraction, ...] | None  # None marks the parametric dihedral family
    group: str


@lru_cache(maxsize=1)
def polyhedral_tables() -> tuple[TableRow, ...]:
    text = resources.files("pillowcase").joinpath("data/polyhedral_tables.txt").read_text()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        total, turns, group = (x.strip() for x in line.split("|"))
        parsed = None if turns == "dihedral" else tuple(sorted(Fraction(x) for x in turns.split()))
        rows.append(TableRow(int(total), parsed, group))
    return tuple(rows)


def tables_text() -> str:
    out = []
    for total in (1, 3):
        out.append(f"# turn sum {total}")
        for row in polyhedral_tables():
            if row.total != total:
                continue
            if row.turns is None:
                fam = ("d/2n d/2n (n-d)/2n (n-d)/2n" if total == 1
                       else "(2n-d)/2n (2n-d)/2n (n+d)/2n (n+d)/2n")
                out.append(f"{fam} | {row.group}")
            else:
                out.append(" ".join(map(str, row.turns)) + f" | {row.group}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class FinitenessVerdict:
    finite: bool
    group: str | None = None  # Dihedral | Tetrahedral | Octahedral | Icosahedral
    dihedral: tuple[int, int] | None = None  # (n, d)

    def __str__(self) -> str:
        if not self.finite:
            return "Infinite"
        if self.dihedral:
            return f"Finite(Dihedral({self.dihedral[0]},{self.dihedral[1]}))"
        return f"Finite({self.group})"


def _dihedral_params(ts: Sequence[Fraction], total: int) -> tuple[int, int] | None:
    s = sorted(ts)
    if not (s[0] == s[1] and s[2] == s[3]):
        return None
    if s[0] + s[2] != Fraction(total, 2):
        return None
    if total == 3:
        s = sorted(1 - x for x in s)
    x = s[0]
    q = x.denominator
    n = q // 2 if q % 2 == 0 else q
    return n, int(2 * n * x)


def finiteness_lookup(turns: Sequence[RationalTurn | Fraction | str]) -> FinitenessVerdict:
    ts = [RationalTurn.parse(t).value if not isinstance(t, RationalTurn) else t.value for t in turns]
    if len(ts) != 4:
        raise DomainError("need four turns")
    if any(t == 0 for t in ts):
        raise DomainError("finiteness tables need all four turns nonzero")
    total = sum(ts)
    if total not in (1, 3):
        raise DomainError(f"finiteness tables cover turn sums 1 and 3, got {total}")
    key = tuple(sorted(ts))
    for row in polyhedral_tables():
        if row.total != total:
            continue
        if row.turns is None:
            p = _dihedral_params(key, int(total))
            if p is not None:
                return FinitenessVerdict(True, "Dihedral", p)
        elif row.turns == key:
            return FinitenessVerdict(True, row.group)
    return FinitenessVerdict(False)


# ------------------------------------------------------------ discreteness


@dataclass(frozen=True)
class DiscretenessVerdict:
    verdict: str  # Discrete | NotDiscrete | Unknown
    reason: str
    finiteness: FinitenessVerdict | None = None
    ade_nondiscrete: bool | None = None

    def __str__(self) -> str:
        return self.verdict


CRYSTALLOGRAPHIC_ORDERS = {1, 2, 3, 4, 6}


def _turn_order(x: Fraction) -> int:
    return (x % 1).denominator


def discreteness_verdict(tuple_: BranchTuple, rho: Character) -> DiscretenessVerdict:
    geo = geometry_class(tuple_, rho)
    if geo.tag == "Trivial":
        return DiscretenessVerdict("Discrete", "trivial-character: action factors through a finite group")
    if geo.tag == "Degenerate":
        return DiscretenessVerdict("Discrete", "degenerate-form: action factors through a finite abelian group")
    t = turns_of(tuple_, rho)
    if geo.tag == "Spherical":
        fin = finiteness_lookup(t)
        o12, o23 = _turn_order(t[0] + t[1]), _turn_order(t[1] + t[2])
        ade = o12 > 5 and o23 > 5
        if fin.finite:
            return DiscretenessVerdict("Discrete", f"spherical-table: {fin}", fin, ade)
        note = f"; rotation orders {o12},{o23} both exceed 5" if ade else ""
        return DiscretenessVerdict("NotDiscrete", "spherical-table: not listed" + note, fin, ade)
    tri = triangle_data(tuple_, rho)
    if geo.tag == "Euclidean":
        orders = [a.denominator for a in tri.angles]
        if any(o not in CRYSTALLOGRAPHIC_ORDERS for o in orders):
            return DiscretenessVerdict("NotDiscrete", f"extension:crystallographic-restriction (rotation orders {orders})")
        if all(a in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 6)) for a in tri.angles):
            return DiscretenessVerdict("Discrete", "extension:crystallographic-triangle")
        return DiscretenessVerdict("Unknown", "extension:euclidean-undecided")
    if all(a == 0 or a.numerator == 1 for a in tri.angles):
        return DiscretenessVerdict("Discrete", "extension:hyperbolic-triangle-group (angles 0 or pi/k)")
    return DiscretenessVerdict("Unknown", "extension:hyperbolic-undecided")


# ------------------------------------------------------------ searches


HALF = Fraction(1, 2)


@dataclass
class SearchReport:
    character: Character
    turns: tuple[Fraction, ...]
    signature: Signature
    finiteness: FinitenessVerdict
    aff_invariance: str
    tangent_character: Character | None
    tangent_differs: bool | None  # tangent character differs from rho and its conjugate
    extras: dict = field(default_factory=dict)


def tangent_character(G: AbelianGroup, tuple_: BranchTuple) -> Character | None:
    """Character taking the value -1 on all four g_j, if it exists."""
    try:
        return character_from_turns(G, tuple_.elements, [HALF] * 4)
    except InvalidInput:
        return None


def _aff_evidence(G: AbelianGroup, tuple_: BranchTuple, rho: Character, auto_bound: int) -> str:
    verdict = aff_equals_gamma_sufficient(G, tuple_)
    if verdict != "Unknown":
        return verdict
    if G.order > auto_bound:
        return "Unknown"
    graph = build_tuple_graph(G, tuple_, include_m=True)
    realized = realized_automorphisms(graph).automorphisms
    orbit = {rho.compose(psi.inverse()) for psi in realized}
    if orbit <= {rho, rho.conjugate()}:
        return "Yes-byRealizedOrbit"
    return "No-orbit-leaves-pair"


def search_definite_nondiscrete(G: AbelianGroup, tuple_: BranchTuple,
                                auto_bound: int = 64) -> list[tuple[Character, SearchReport]]:
    hits = []
    rho_t = tangent_character(G, tuple_)
    aff_cache: dict[Character, str] = {}
    for rho in enumerate_characters(G):
        t = turns_of(tuple_, rho)
        if any(x == 0 for x in t) or sum(t) not in (1, 3):
            continue
        fin = finiteness_lookup(t)
        if fin.finite:
            continue
        if rho not in aff_cache:
            aff_cache[rho] = _aff_evidence(G, tuple_, rho, auto_bound)
        tangent_differs = None if rho_t is None else rho_t not in (rho, rho.conjugate())
        hits.append((rho, SearchReport(rho, t, signature_exact(tuple_, rho), fin,
                                       aff_cache[rho], rho_t, tangent_differs)))
    return hits


def _canonical_orbit(G: AbelianGroup, tuple_: BranchTuple, autos) -> set[tuple]:
    comp = build_tuple_graph(G, tuple_, include_m=False).vertices
    out = set()
    for v in comp:
        for psi in autos:
            out.add(tuple(psi(h).coords for h in v))
    return out


@dataclass
class SearchHit:
    group: AbelianGroup
    tuple: BranchTuple
    character: Character
    report: SearchReport

    @property
    def squares(self) -> int:
        return 2 * self.group.order


def minimal_square_search(max_squares: int, cap: int = DEFAULT_SQUARE_CAP) -> list[SearchHit]:
    """All (G, tuple, rho) with definite, non-discrete action on translation
    surfaces whose every cone point is singular, up to moves and Aut(G)."""
    if max_squares > cap:
        raise CapabilityError(f"max_squares {max_squares} exceeds the cap {cap}")
    hits: list[SearchHit] = []
    # four zero-sum generators means at most three independent ones
    for G in enumerate_abelian_groups(max_squares // 2, max_rank=3):
        if G.order == 1:
            continue
        autos = enumerate_automorphisms(G, bound=max(64, G.order))
        seen: set[tuple] = set()
        elements = list(G.elements())
        for g1, g2, g3 in itertools.product(elements, repeat=3):
            g4 = -(g1 + g2 + g3)
            tup = BranchTuple(G, (g1, g2, g3, g4))
            if tup.key() in seen:
                continue
            orders = tup.orders
            if any(o % 2 or o == 2 for o in orders):
                continue
            if not generates(G, tup.elements):
                continue
            seen |= _canonical_orbit(G, tup, autos)
            for rho, rep in search_definite_nondiscrete(G, tup):
                hits.append(SearchHit(G, tup, rho, rep))
    hits.sort(key=lambda h: (h.squares, h.group.moduli, h.tuple.key(), h.character.dual_coords))
    return hits

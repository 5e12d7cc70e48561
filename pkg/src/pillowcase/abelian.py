"""Finite abelian groups in invariant-factor form, characters and automorphisms.

Everything here is exact: group elements are residue vectors and character
values are rational turns (fractions of a full circle), never floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

from .errors import CapabilityError, InvalidInput
from .smith import integer_kernel, smith_normal_form, solve_integer

DEFAULT_AUTOMORPHISM_BOUND = 64


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


@dataclass(frozen=True, order=True)
class RationalTurn:
    """An angle measured in full turns, kept in ``[0, 1)``.

    ``RationalTurn(Fraction(1, 4))`` is a quarter turn, i.e. argument pi/2.
    """

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    @classmethod
    def parse(cls, text: str | int | Fraction) -> "RationalTurn":
        if isinstance(text, str):
            text = text.strip()
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse turn {text!r}") from exc

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: "RationalTurn") -> "RationalTurn":
        return RationalTurn(self.value + other.value)

    def __sub__(self, other: "RationalTurn") -> "RationalTurn":
        return RationalTurn(self.value - other.value)

    def __neg__(self) -> "RationalTurn":
        return RationalTurn(-self.value)

    def __mul__(self, n: int) -> "RationalTurn":
        return RationalTurn(self.value * n)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"RationalTurn({self.value})"


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/m_1 x ... x Z/m_k`` with ``1 < m_1 | m_2 | ... | m_k``.

    The trivial group has ``moduli == ()``.
    """

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        object.__setattr__(self, "moduli", moduli)
        for m in moduli:
            if m < 1:
                raise InvalidInput(f"moduli must be positive, got {moduli}")
        for a, b in zip(moduli, moduli[1:]):
            if b % a:
                raise InvalidInput(f"moduli {moduli} are not a divisibility chain")
        if any(m == 1 for m in moduli):
            raise InvalidInput(f"moduli {moduli} contain a trivial factor")

    @classmethod
    def from_moduli(cls, moduli: Sequence[int]) -> "AbelianGroup":
        """Canonical group isomorphic to ``Z/moduli[0] x Z/moduli[1] x ...``."""
        moduli = list(moduli)
        gens = [[int(i == j) for i in range(len(moduli))] for j in range(len(moduli))]
        return canonicalize_subgroup(moduli, gens)[0]

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        return self.moduli[-1] if self.moduli else 1

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator["GroupElement"]:
        return self.elements()

    def elements(self) -> Iterator["GroupElement"]:
        for coords in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, coords)

    def element(self, coords: Sequence[int] | int) -> "GroupElement":
        if isinstance(coords, int):
            coords = (coords,)
        if len(coords) != self.rank:
            raise InvalidInput(f"element {tuple(coords)} has wrong length for group {self}")
        return GroupElement(self, tuple(int(c) % m for c, m in zip(coords, self.moduli)))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def basis(self) -> list["GroupElement"]:
        return [self.element([int(i == j) for i in range(self.rank)]) for j in range(self.rank)]

    def is_cyclic(self) -> bool:
        return self.rank <= 1

    def __str__(self) -> str:
        if not self.moduli:
            return "1"
        return " x ".join(f"Z/{m}" for m in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup = field(repr=False)
    coords: tuple[int, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        m = self.group.moduli
        return GroupElement(self.group, tuple((a + b) % n for a, b, n in zip(self.coords, other.coords, m)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        m = self.group.moduli
        return GroupElement(self.group, tuple((a - b) % n for a, b, n in zip(self.coords, other.coords, m)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple((-a) % n for a, n in zip(self.coords, self.group.moduli)))

    def __mul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple((k * a) % n for a, n in zip(self.coords, self.group.moduli)))

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        return element_order(self.group, self)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.coords < other.coords

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"


def element_order(G: AbelianGroup, x: GroupElement) -> int:
    """Smallest ``n >= 1`` with ``n * x == 0``."""
    return _lcm(m // math.gcd(c, m) for c, m in zip(x.coords, G.moduli))


def canonicalize_subgroup(ambient_moduli: Sequence[int],
                          generators: Sequence[Sequence[int]]) -> tuple[AbelianGroup, list[GroupElement]]:
    """Invariant-factor form of the subgroup spanned by ``generators``.

    Returns the abstract group together with each generator rewritten in its
    coordinates. The relation lattice of the generators is found as an integer
    kernel and then brought to Smith form.
    """
    ambient = [int(m) for m in ambient_moduli]
    gens = [list(map(int, g)) for g in generators]
    if not ambient and gens:
        raise InvalidInput("empty ambient moduli with nonempty generators")
    if any(m < 1 for m in ambient):
        raise InvalidInput(f"ambient moduli must be positive, got {ambient}")
    k, r = len(ambient), len(gens)
    for g in gens:
        if len(g) != k:
            raise InvalidInput(f"generator {g} does not match ambient moduli {ambient}")
    if r == 0:
        return AbelianGroup(()), []

    # [A | diag(m)] x = 0 describes integer relations among the generators
    big = [[gens[j][i] % ambient[i] for j in range(r)] + [ambient[i] * (i == l) for l in range(k)]
           for i in range(k)]
    kernel = integer_kernel(big, r + k)
    relations = [[vec[j] for vec in kernel] for j in range(r)]  # r x s
    s = len(kernel)
    D, U, _ = smith_normal_form(relations, s)
    factors = [D[i][i] if i < s else 0 for i in range(r)]
    if any(f == 0 for f in factors):  # pragma: no cover - finite ambient forbids this
        raise InvalidInput("generated subgroup is infinite")
    keep = [i for i in range(r) if factors[i] > 1]
    group = AbelianGroup(tuple(factors[i] for i in keep))
    # already canonical ambient and generated in full: keep the caller's coordinates
    live = [i for i in range(k) if ambient[i] > 1]
    chain = [ambient[i] for i in live]
    if math.prod(chain) == group.order and all(b % a == 0 for a, b in zip(chain, chain[1:])):
        return group, [GroupElement(group, tuple(g[i] % ambient[i] for i in live)) for g in gens]
    images = [GroupElement(group, tuple(U[i][j] % factors[i] for i in keep)) for j in range(r)]
    return group, images


def subgroup_elements(G: AbelianGroup, generators: Iterable[GroupElement]) -> set[GroupElement]:
    """Explicit closure of ``generators`` under addition."""
    H = {G.identity}
    for x in generators:
        if x in H:
            continue
        multiples = []
        y = x
        while y not in H:
            multiples.append(y)
            y = y + x
        H = H | {h + m for h in H for m in multiples}
    return H


def generates(G: AbelianGroup, elements: Sequence[GroupElement]) -> bool:
    if G.order <= 20000:
        return len(subgroup_elements(G, elements)) == G.order
    H, _ = canonicalize_subgroup(G.moduli, [e.coords for e in elements])
    return H.order == G.order


def enumerate_abelian_groups(max_order: int, max_rank: int | None = None) -> list[AbelianGroup]:
    """All groups of order ``<= max_order`` in canonical form, sorted by order."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], prod: int):
        out.append(prefix)
        if max_rank is not None and len(prefix) >= max_rank:
            return
        # new smallest factor must divide the current smallest one
        if prefix:
            cands = [d for d in range(2, prefix[0] + 1) if prefix[0] % d == 0]
        else:
            cands = range(2, max_order + 1)
        for d in cands:
            if prod * d <= max_order:
                extend((d,) + prefix, prod * d)

    extend((), 1)
    return sorted((AbelianGroup(m) for m in out), key=lambda G: (G.order, G.moduli))


def primary_generators(G: AbelianGroup) -> list[GroupElement]:
    """Generators of the prime-power cyclic pieces of ``G``.

    ``Z/6`` yields ``[3, 2]`` (orders 2 and 3).
    """
    out = []
    for i, m in enumerate(G.moduli):
        n, p = m, 2
        while n > 1:
            if n % p == 0:
                q = 1
                while n % p == 0:
                    n //= p
                    q *= p
                coords = [0] * G.rank
                coords[i] = m // q
                out.append(GroupElement(G, tuple(coords)))
            p += 1
    return out


# ---------------------------------------------------------------- characters


@dataclass(frozen=True)
class Character:
    """Homomorphism ``G -> Q/Z`` given by ``g |-> sum a_i g_i / m_i``."""

    group: AbelianGroup = field(repr=False)
    dual_coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(a) % m for a, m in zip(self.dual_coords, self.group.moduli))
        if len(coords) != self.group.rank:
            raise InvalidInput("dual coordinates do not match the group rank")
        object.__setattr__(self, "dual_coords", coords)

    def __call__(self, g: GroupElement) -> RationalTurn:
        return RationalTurn(sum(Fraction(a * c, m) for a, c, m in
                                zip(self.dual_coords, g.coords, self.group.moduli)))

    def is_trivial(self) -> bool:
        return not any(self.dual_coords)

    @property
    def order(self) -> int:
        return _lcm(Fraction(a, m).denominator for a, m in zip(self.dual_coords, self.group.moduli))

    def conjugate(self) -> "Character":
        return Character(self.group, tuple(-a for a in self.dual_coords))

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.group, tuple(a + b for a, b in zip(self.dual_coords, other.dual_coords)))

    def compose(self, psi: "GroupAutomorphism") -> "Character":
        """The character ``g |-> self(psi(g))``."""
        coords = []
        for m, e in zip(self.group.moduli, self.group.basis()):
            coords.append(int(self(psi(e)).value * m))
        return Character(self.group, tuple(coords))

    def turns(self, elements: Sequence[GroupElement]) -> tuple[RationalTurn, ...]:
        return tuple(self(g) for g in elements)

    def __str__(self) -> str:
        return "chi[" + ",".join(map(str, self.dual_coords)) + "]"


def enumerate_characters(G: AbelianGroup) -> list[Character]:
    return [Character(G, coords) for coords in itertools.product(*(range(m) for m in G.moduli))]


def trivial_character(G: AbelianGroup) -> Character:
    return Character(G, (0,) * G.rank)


def _relation_text(c: Sequence[int]) -> str:
    terms = []
    for j, cj in enumerate(c):
        if cj:
            terms.append(f"{cj}*g{j + 1}")
    return " + ".join(terms).replace("+ -", "- ") + " = 0"


def character_from_turns(G: AbelianGroup, tuple_: Sequence[GroupElement],
                         turns: Sequence[RationalTurn | Fraction | str]) -> Character:
    """The unique character taking the value ``turns[j]`` on ``tuple_[j]``.

    Raises ``InvalidInput`` naming a violated integer relation when no such
    character exists.
    """
    gens = list(tuple_)
    ts = [t if isinstance(t, RationalTurn) else RationalTurn.parse(t) for t in turns]
    if len(gens) != len(ts):
        raise InvalidInput("need one turn per generator")
    k, r = G.rank, len(gens)
    big = [[g.coords[i] for g in gens] + [G.moduli[i] * (i == l) for l in range(k)] for i in range(k)]

    def violated(c: Sequence[int]) -> bool:
        return sum(cj * t.value for cj, t in zip(c, ts)).denominator != 1

    relations = [[1] * r] if r == 4 else []
    relations += [vec[:r] for vec in integer_kernel(big, r + k)] if k else [
        [int(i == j) for i in range(r)] for j in range(r)]
    for c in relations:
        if any(c) and violated(c):
            raise InvalidInput(f"turns {[str(t) for t in ts]} violate the relation {_relation_text(c)}")

    coords = []
    for i, e in enumerate(G.basis()):
        w = solve_integer(big, list(e.coords), r + k)
        if w is None:
            raise InvalidInput("the given elements do not generate the group")
        value = sum(wj * t.value for wj, t in zip(w[:r], ts)) * G.moduli[i]
        coords.append(int(value) % G.moduli[i])
    chi = Character(G, tuple(coords))
    if any(chi(g) != t for g, t in zip(gens, ts)):  # pragma: no cover - guarded by relation scan
        raise InvalidInput(f"turns {[str(t) for t in ts]} are inconsistent")
    return chi


# ------------------------------------------------------------- automorphisms


@dataclass(frozen=True)
class GroupAutomorphism:
    """Endomorphism given by the images of the basis vectors.

    ``images[j]`` is the coordinate tuple of the image of ``e_j``.
    """

    group: AbelianGroup = field(repr=False)
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = self.group
        imgs = tuple(tuple(int(c) % m for c, m in zip(col, G.moduli)) for col in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != G.rank:
            raise InvalidInput("need one image per basis vector")
        for m, col in zip(G.moduli, imgs):
            if any((m * c) % n for c, n in zip(col, G.moduli)):
                raise InvalidInput(f"images {imgs} do not define a homomorphism of {G}")

    @classmethod
    def identity(cls, G: AbelianGroup) -> "GroupAutomorphism":
        return cls(G, tuple(e.coords for e in G.basis()))

    @classmethod
    def multiplication(cls, G: AbelianGroup, u: int) -> "GroupAutomorphism":
        return cls(G, tuple((u * e).coords for e in G.basis()))

    def __call__(self, g: GroupElement) -> GroupElement:
        G = self.group
        out = [0] * G.rank
        for c, col in zip(g.coords, self.images):
            for i in range(G.rank):
                out[i] += c * col[i]
        return GroupElement(G, tuple(x % m for x, m in zip(out, G.moduli)))

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self o other``."""
        return GroupAutomorphism(self.group, tuple(self(GroupElement(self.group, col)).coords
                                                   for col in other.images))

    def inverse(self) -> "GroupAutomorphism":
        G = self.group
        k = G.rank
        big = [[self.images[j][i] for j in range(k)] + [G.moduli[i] * (i == l) for l in range(k)]
               for i in range(k)]
        cols = []
        for e in G.basis():
            w = solve_integer(big, list(e.coords), 2 * k)
            if w is None:
                raise InvalidInput("automorphism is not invertible")
            cols.append(G.element(w[:k]).coords)
        inv = GroupAutomorphism(G, tuple(cols))
        if not self.compose(inv).is_identity():
            raise InvalidInput("automorphism is not invertible")
        return inv

    def is_identity(self) -> bool:
        return self.images == tuple(e.coords for e in self.group.basis())

    def is_bijective(self) -> bool:
        return len({self(g) for g in self.group.elements()}) == self.group.order

    def __str__(self) -> str:
        if self.is_identity():
            return "id"
        if self.group.rank == 1:
            return f"x->{self.images[0][0]}x"
        return "[" + ";".join(",".join(map(str, col)) for col in self.images) + "]"


def enumerate_automorphisms(G: AbelianGroup, bound: int = DEFAULT_AUTOMORPHISM_BOUND) -> list[GroupAutomorphism]:
    """All automorphisms of ``G`` (brute force, ``|G| <= bound``)."""
    if G.order > bound:
        raise CapabilityError(
            f"|G| = {G.order} exceeds the automorphism bound {bound}; "
            "use aff_equals_gamma_sufficient (order / cyclic-form tests) instead")
    elements = list(G.elements())
    by_order: dict[int, list[GroupElement]] = {}
    for x in elements:
        by_order.setdefault(element_order(G, x), []).append(x)

    out = []

    def extend(chosen: list[GroupElement], H: set[GroupElement]):
        j = len(chosen)
        if j == G.rank:
            psi = GroupAutomorphism(G, tuple(x.coords for x in chosen))
            if psi.is_bijective():
                out.append(psi)
            return
        m = G.moduli[j]
        for x in by_order.get(m, []):
            # <chosen, x> must be a direct sum of cyclic pieces of the right size
            n, y = 1, x
            while y not in H:
                n += 1
                y = y + x
            if n != m:
                continue
            extend(chosen + [x], H | {h + i * x for h in H for i in range(m)})

    extend([], {G.identity})
    return out

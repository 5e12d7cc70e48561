"""Abelian branched covers M(G, g) of the pillowcase as explicit square complexes.

Each deck element ``g`` owns a bottom square ``B1_g`` and a top square
``B2_g``. The pillowcase edge ``e^j`` runs from cone point ``z_j`` to
``z_{j+1}`` (indices mod 4) and has one lift ``e^j_g`` per ``g``.
The bottom square ``B1_g`` is bounded by ``e^1_g + e^2_g + e^3_g + e^4_g``,
the top square ``B2_g`` by the reversed edges ``e^1_g``, ``e^2_{g+g2}``,
``e^3_{g+g2+g3}``, ``e^4_{g+g2+g3+g4}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Sequence

from .abelian import AbelianGroup, GroupElement, canonicalize_subgroup, element_order, generates
from .errors import InvalidInput


@dataclass(frozen=True)
class BranchTuple:
    """Four deck elements with ``g1 + g2 + g3 + g4 = 0``."""

    group: AbelianGroup = field(repr=False)
    elements: tuple[GroupElement, GroupElement, GroupElement, GroupElement]

    def __post_init__(self):
        els = tuple(self.elements)
        if len(els) != 4:
            raise InvalidInput(f"a branch tuple has four entries, got {len(els)}")
        object.__setattr__(self, "elements", els)
        total = els[0] + els[1] + els[2] + els[3]
        if not total.is_identity():
            raise InvalidInput(
                f"branch tuple {self} violates g1+g2+g3+g4 = 0 (sum is {total})")

    @classmethod
    def from_coords(cls, G: AbelianGroup, rows: Sequence[Sequence[int] | int]) -> "BranchTuple":
        return cls(G, tuple(G.element(r) for r in rows))

    def validate(self) -> "BranchTuple":
        if not generates(self.group, self.elements):
            raise InvalidInput(f"branch tuple {self} does not generate {self.group} (surface disconnected)")
        return self

    def __getitem__(self, j: int) -> GroupElement:
        return self.elements[j]

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(element_order(self.group, g) for g in self.elements)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.coords for g in self.elements)

    def __str__(self) -> str:
        return "(" + ",".join(str(g) for g in self.elements) + ")"


@dataclass(frozen=True)
class StratumSignature:
    preimage_counts: tuple[int, ...]
    cone_angles: tuple[int, ...]  # multiples of pi, one per branch index
    euler_characteristic: int
    genus: int
    translation: bool
    all_sigma_singular: bool
    order_one_indices: tuple[int, ...]
    singularity_orders: tuple[int, ...]

    @property
    def num_sigma(self) -> int:
        return sum(self.preimage_counts)

    @property
    def stratum(self) -> str:
        letter = "H" if self.translation else "Q"
        orders = [m for m in self.singularity_orders if m != 0] or [0]  # flat torus: H(0)
        return f"{letter}(" + ",".join(map(str, orders)) + ")"


class _UnionFind:
    def __init__(self):
        self.parent: dict[Any, Any] = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class SurfaceModel:
    group: AbelianGroup
    tuple: BranchTuple
    # square (level, g) -> four (edge index j, edge subscript, sign) in order j = 1..4
    incidence: dict[tuple[int, GroupElement], list[tuple[int, GroupElement, int]]]
    # (level, g, j): vertex class id of the corner of the square lying over z_j
    corner_vertex: dict[tuple[int, GroupElement, int], int]
    vertex_cone_point: dict[int, int]

    @property
    def squares(self) -> list[tuple[int, GroupElement]]:
        return list(self.incidence)

    @property
    def num_squares(self) -> int:
        return len(self.incidence)

    @property
    def edges(self) -> list[tuple[int, GroupElement]]:
        return [(j, g) for j in range(1, 5) for g in self.group.elements()]

    @property
    def num_edges(self) -> int:
        return 4 * self.group.order

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_cone_point)

    def vertex_counts(self) -> tuple[int, ...]:
        counts = [0, 0, 0, 0]
        for z in self.vertex_cone_point.values():
            counts[z - 1] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_squares

    def gluing_listing(self) -> str:
        """One line per square with signed boundary edges; stable for diffing."""
        lines = []
        for (level, g), bd in sorted(self.incidence.items(), key=lambda kv: (kv[0][0], kv[0][1].coords)):
            parts = [("+" if s > 0 else "-") + f"e{j}_{h}" for j, h, s in bd]
            lines.append(f"B{level}_{g}: " + " ".join(parts))
        return "\n".join(lines) + "\n"


def top_square_edges(tuple_: BranchTuple, g: GroupElement) -> list[GroupElement]:
    """Subscripts of e^1..e^4 on the boundary of ``B2_g``."""
    _, g2, g3, g4 = tuple_.elements
    return [g, g + g2, g + g2 + g3, g + g2 + g3 + g4]


def build_surface(G: AbelianGroup, tuple_: BranchTuple) -> SurfaceModel:
    if tuple_.group != G:
        raise InvalidInput("branch tuple lives in a different group")
    tuple_.validate()
    incidence: dict[tuple[int, GroupElement], list[tuple[int, GroupElement, int]]] = {}
    uf = _UnionFind()
    for g in G.elements():
        incidence[(1, g)] = [(j, g, +1) for j in range(1, 5)]
        incidence[(2, g)] = [(j, h, -1) for j, h in zip(range(1, 5), top_square_edges(tuple_, g))]
        # e^j joins the corners over z_j and z_{j+1}
        for level in (1, 2):
            for j, h, _ in incidence[(level, g)]:
                uf.union(("corner", level, g, j), ("start", j, h))
                uf.union(("corner", level, g, j % 4 + 1), ("end", j, h))
    roots: dict[Any, int] = {}
    corner_vertex = {}
    vertex_cone_point = {}
    for g in G.elements():
        for level in (1, 2):
            for j in range(1, 5):
                r = uf.find(("corner", level, g, j))
                if r not in roots:
                    roots[r] = len(roots)
                    vertex_cone_point[roots[r]] = j
                corner_vertex[(level, g, j)] = roots[r]
    return SurfaceModel(G, tuple_, incidence, corner_vertex, vertex_cone_point)


def geometric_invariants(surface: SurfaceModel) -> StratumSignature:
    G = surface.group
    n = G.order
    orders = surface.tuple.orders
    counts = tuple(n // o for o in orders)
    chi = 2 * n - sum(n - c for c in counts)
    if chi != surface.euler_characteristic():  # pragma: no cover - guards the gluing
        raise AssertionError("cell count and Riemann-Hurwitz disagree")
    genus = (2 - chi) // 2
    translation = all(o % 2 == 0 for o in orders)
    sing = []
    for o, c in zip(orders, counts):
        # cone angle pi*o; translation order o/2 - 1, quadratic order o - 2
        m = o // 2 - 1 if translation else o - 2
        sing += [m] * c
    return StratumSignature(
        preimage_counts=counts,
        cone_angles=tuple(orders),
        euler_characteristic=chi,
        genus=genus,
        translation=translation,
        all_sigma_singular=all(o != 2 for o in orders),
        order_one_indices=tuple(j + 1 for j, o in enumerate(orders) if o == 1),
        singularity_orders=tuple(sorted(sing, reverse=True)),
    )


# ------------------------------------------------------------ spec files


def parse_surface_spec(doc: dict) -> tuple[AbelianGroup, BranchTuple]:
    """``{"ambient_moduli": [...], "branch_tuple": [[...] x 4]}`` to a surface."""
    if not isinstance(doc, dict):
        raise InvalidInput("surface spec must be a JSON object")
    try:
        ambient = [int(m) for m in doc["ambient_moduli"]]
        rows = [[int(x) for x in row] for row in doc["branch_tuple"]]
    except KeyError as exc:
        raise InvalidInput(f"surface spec is missing the field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"surface spec has malformed entries: {exc}") from exc
    if len(rows) != 4:
        raise InvalidInput(f"branch_tuple needs 4 rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != len(ambient):
            raise InvalidInput(f"branch_tuple row {i + 1} has length {len(row)}, expected {len(ambient)}")
    total = [sum(r[i] for r in rows) % m for i, m in enumerate(ambient)]
    if any(total):
        raise InvalidInput(f"branch tuple violates g1+g2+g3+g4 = 0 (sum is {total} in the ambient group)")
    G, gens = canonicalize_subgroup(ambient, rows)
    return G, BranchTuple(G, tuple(gens))


def load_surface_spec(path: str | Path) -> tuple[tuple[AbelianGroup, BranchTuple], dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from exc
    return parse_surface_spec(doc), doc


def cyclic_surface(n: int, tuple_: Sequence[int]) -> tuple[AbelianGroup, BranchTuple]:
    return parse_surface_spec({"ambient_moduli": [n], "branch_tuple": [[x] for x in tuple_]})

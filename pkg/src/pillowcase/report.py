"""Report objects shared by the CLI: surface blocks and per-character rows.

Classification fields hold strings and integers only (fractions as ``p/q``),
so a report survives a JSON round trip unchanged.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from . import __version__
from .abelian import AbelianGroup, Character
from .cohomology import global_rel_split, restriction_classify, summand_dimension
from .errors import DomainError
from .hodge import (discreteness_verdict, finiteness_lookup, geometry_class, signature_exact,
                    triangle_data, turns_of)
from .surface import BranchTuple, build_surface, geometric_invariants


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def pi_multiple(x: Fraction) -> str:
    if x == 0:
        return "0"
    if x == 1:
        return "pi"
    if x.numerator == 1:
        return f"pi/{x.denominator}"
    return f"{x.numerator}pi/{x.denominator}"


@dataclass
class SurfaceBlock:
    group: str
    moduli: list
    tuple: str
    order: int
    squares: int
    genus: int
    euler_characteristic: int
    stratum: str
    translation: bool
    all_sigma_singular: bool
    order_one_indices: list
    rel_splits: bool
    rel_witness: str | None


@dataclass
class CharacterRow:
    dual_coords: list
    turns: list
    dim: int
    restriction: str
    abs_dim: int
    signature: str | None
    geometry: str
    triangle_angles: list | None
    finiteness: str | None
    discreteness: str
    reason: str


def surface_block(G: AbelianGroup, T: BranchTuple) -> SurfaceBlock:
    inv = geometric_invariants(build_surface(G, T))
    rel = global_rel_split(G, T)
    return SurfaceBlock(
        group=str(G), moduli=list(G.moduli), tuple=str(T), order=G.order, squares=2 * G.order,
        genus=inv.genus, euler_characteristic=inv.euler_characteristic, stratum=inv.stratum,
        translation=inv.translation, all_sigma_singular=inv.all_sigma_singular,
        order_one_indices=list(inv.order_one_indices), rel_splits=rel.splits,
        rel_witness=None if rel.witness is None else str(rel.witness))


def character_row(G: AbelianGroup, T: BranchTuple, rho: Character) -> CharacterRow:
    t = turns_of(T, rho)
    rc = restriction_classify(T, rho)
    geo = geometry_class(T, rho)
    sig = None if rho.is_trivial() else str(signature_exact(T, rho))
    angles = None
    try:
        angles = [pi_multiple(a) for a in triangle_data(T, rho).angles]
    except DomainError:
        pass
    fin = None
    if all(x != 0 for x in t) and sum(t) in (1, 3):
        fin = str(finiteness_lookup(t))
    disc = discreteness_verdict(T, rho)
    return CharacterRow(
        dual_coords=list(rho.dual_coords), turns=[frac(x) for x in t], dim=summand_dimension(T, rho),
        restriction=rc.case, abs_dim=rc.abs_dim, signature=sig, geometry=str(geo),
        triangle_angles=angles, finiteness=fin, discreteness=disc.verdict, reason=disc.reason)


def header() -> dict:
    return {"tool": "pillowcase", "version": __version__}


def to_json(payload) -> str:
    def conv(x):
        if isinstance(x, (SurfaceBlock, CharacterRow)):
            return {f.name: conv(getattr(x, f.name)) for f in fields(x)}
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [conv(v) for v in x]
        return x
    return json.dumps(conv(payload), indent=2, sort_keys=False)


def row_from_dict(d: dict) -> CharacterRow:
    return CharacterRow(**d)


def block_from_dict(d: dict) -> SurfaceBlock:
    return SurfaceBlock(**d)


def render_block(b: SurfaceBlock) -> str:
    lines = [f"surface      M({b.group}, {b.tuple})",
             f"squares      {b.squares}",
             f"genus        {b.genus} (euler characteristic {b.euler_characteristic})",
             f"stratum      {b.stratum}",
             f"translation  {'yes' if b.translation else 'no'}",
             f"all of Sigma singular  {'yes' if b.all_sigma_singular else 'no'}"]
    if b.order_one_indices:
        lines.append(f"note         cone points of order 1 over z{b.order_one_indices}")
    lines.append("rel          " + ("r splits" if b.rel_splits else f"r does not split (witness {b.rel_witness})"))
    return "\n".join(lines)


def render_rows(rows: list[CharacterRow]) -> str:
    out = []
    for r in rows:
        out.append(f"chi{r.dual_coords} turns=({', '.join(r.turns)}) dim={r.dim} {r.restriction} "
                   f"abs={r.abs_dim} sig={r.signature or '-'} {r.geometry}"
                   + (f" angles=({', '.join(r.triangle_angles)})" if r.triangle_angles else "")
                   + (f" {r.finiteness}" if r.finiteness else "")
                   + f" {r.discreteness} [{r.reason}]")
    return "\n".join(out)


__all__ = ["SurfaceBlock", "CharacterRow", "surface_block", "character_row", "to_json", "header",
           "asdict", "frac", "pi_multiple", "render_block", "render_rows", "row_from_dict", "block_from_dict"]

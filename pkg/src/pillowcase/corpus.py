"""Named surfaces used across tests, notebooks and the CLI."""

from __future__ import annotations

from .abelian import AbelianGroup, Character, character_from_turns
from .surface import BranchTuple, parse_surface_spec

SPECS: dict[str, dict] = {
    "pillowcase": {"ambient_moduli": [1], "branch_tuple": [[0], [0], [0], [0]]},
    "wollmilchsau": {"ambient_moduli": [4], "branch_tuple": [[1], [1], [1], [1]]},
    "ornithorynque": {"ambient_moduli": [6], "branch_tuple": [[1], [1], [1], [3]]},
    "z3": {"ambient_moduli": [3], "branch_tuple": [[0], [1], [1], [1]]},
    "z8": {"ambient_moduli": [8], "branch_tuple": [[1], [1], [1], [5]]},
    "klein": {"ambient_moduli": [2, 2], "branch_tuple": [[1, 0], [0, 1], [1, 0], [0, 1]]},
    "order480": {"ambient_moduli": [120, 120, 120],
               "branch_tuple": [[20, 0, 0], [0, 15, 0], [0, 0, 12], [100, 105, 108]],
               "character": {"turns": ["1/6", "1/8", "1/10", "73/120"]}},
}

# surfaces small enough for every exhaustive and numeric check
CORPUS = ("pillowcase", "wollmilchsau", "ornithorynque", "z3", "z8", "klein")
VERIFY_CORPUS = ("wollmilchsau", "ornithorynque", "z3", "z8")


def named(name: str) -> tuple[AbelianGroup, BranchTuple]:
    try:
        return parse_surface_spec(SPECS[name])
    except KeyError as exc:
        raise KeyError(f"unknown surface {name!r}; known: {', '.join(SPECS)}") from exc


def order480_character() -> tuple[AbelianGroup, BranchTuple, Character]:
    G, T = named("order480")
    return G, T, character_from_turns(G, T.elements, SPECS["order480"]["character"]["turns"])

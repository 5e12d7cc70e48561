"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 failed consistency check.
A surface argument is either a path to a JSON spec or a built-in name.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import report as rp
from .abelian import Character, character_from_turns, enumerate_characters
from .affine import (affine_generators, build_tuple_graph, gamma_generators, gamma_one, projective_class,
                     random_loop_words, restricted_action, is_projectively_parabolic, word_derivative)
from .cohomology import isotypic_basis, summand_dimension
from .corpus import SPECS, VERIFY_CORPUS
from .errors import CapabilityError, ConsistencyError, DomainError, InvalidInput
from .hodge import (minimal_square_search, search_definite_nondiscrete, signature_exact, tables_text,
                    polyhedral_tables)
from .surface import parse_surface_spec

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2


# ------------------------------------------------------------ input


def load_spec(arg: str) -> tuple[dict, str]:
    p = Path(arg)
    if p.exists():
        try:
            return json.loads(p.read_text()), str(p)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{arg}: invalid JSON ({exc})") from exc
    if arg in SPECS:
        return SPECS[arg], arg
    raise InvalidInput(f"{arg!r} is neither a spec file nor a built-in surface ({', '.join(SPECS)})")


def select_characters(G, T, selector) -> list[Character]:
    if selector is None or selector == "all":
        return list(enumerate_characters(G))
    if isinstance(selector, str):
        return [character_from_turns(G, T.elements, [s.strip() for s in selector.split(",")])]
    if isinstance(selector, dict) and "turns" in selector:
        return [character_from_turns(G, T.elements, [str(t) for t in selector["turns"]])]
    if isinstance(selector, dict) and "dual_coords" in selector:
        coords = selector["dual_coords"]
        if not isinstance(coords, list) or len(coords) != G.rank:
            raise InvalidInput(f"dual_coords needs {G.rank} integers for {G}")
        return [Character(G, tuple(int(a) for a in coords))]
    raise InvalidInput(f"unrecognized character selector {selector!r}")


def _surface(args):
    doc, label = load_spec(args.spec)
    G, T = parse_surface_spec(doc)
    T.validate()
    return doc, label, G, T


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(rp.to_json({"header": rp.header(), **payload}))
    else:
        print(text)


# ------------------------------------------------------------ commands


def cmd_info(args) -> int:
    _, _, G, T = _surface(args)
    block = rp.surface_block(G, T)
    _emit(args, {"surface": block}, rp.render_block(block))
    return EXIT_OK


def cmd_decompose(args) -> int:
    doc, _, G, T = _surface(args)
    selector = args.character if args.character is not None else doc.get("character", "all")
    rows = [rp.character_row(G, T, rho) for rho in select_characters(G, T, selector)]
    block = rp.surface_block(G, T)
    _emit(args, {"surface": block, "characters": rows}, rp.render_block(block) + "\n\n" + rp.render_rows(rows))
    return EXIT_OK


def cmd_graph(args) -> int:
    _, _, G, T = _surface(args)
    graph = build_tuple_graph(G, T, include_m=args.with_m, bound=args.bound)
    gens = affine_generators(graph)
    glist = [{"name": w.name, "word": w.export(), "derivative": [list(r) for r in word_derivative(w)],
              "class": [list(r) for r in projective_class(word_derivative(w))]} for w in gens]
    payload = {"vertices": [str(v) for v in graph.vertices], "edges": [e.export() for e in graph.edges],
               "generators": glist}
    lines = [f"vertices {graph.num_vertices}  edges {len(graph.edges)}  "
             f"({'with' if args.with_m else 'without'} m-edges)"]
    lines += [f"  {v}" for v in graph.vertices]
    lines.append("edges")
    lines += [f"  {e.export()}" for e in graph.edges]
    lines.append("generators")
    lines += [f"  {g['name']}: {g['word']}  D={g['derivative']}" for g in glist]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _report_dict(G, T, rho, rep) -> dict:
    return {"group": str(G), "tuple": str(T), "squares": 2 * G.order, "character": list(rho.dual_coords),
            "turns": [rp.frac(t) for t in rep.turns], "signature": str(rep.signature),
            "finiteness": str(rep.finiteness), "aff_invariance": rep.aff_invariance,
            "tangent_character": None if rep.tangent_character is None else list(rep.tangent_character.dual_coords),
            "tangent_differs": rep.tangent_differs}


def cmd_search(args) -> int:
    if args.spec is None and args.max_squares is None:
        raise InvalidInput("search needs a surface or --max-squares")
    if args.spec is not None:
        _, _, G, T = _surface(args)
        hits = [_report_dict(G, T, rho, rep) for rho, rep in search_definite_nondiscrete(G, T)]
    else:
        hits = [_report_dict(h.group, h.tuple, h.character, h.report)
                for h in minimal_square_search(args.max_squares, cap=args.cap)]
    text = "\n".join(f"{h['squares']} squares  {h['group']} {h['tuple']}  chi{h['character']} "
                     f"turns=({', '.join(h['turns'])}) sig={h['signature']} {h['finiteness']} "
                     f"aff={h['aff_invariance']} tangent_differs={h['tangent_differs']}" for h in hits) or "no hits"
    _emit(args, {"hits": hits}, text)
    return EXIT_OK


# ------------------------------------------------------------ verification


def _check(name, label, character, residuals, passed, detail=""):
    from .oracle import Report
    return Report(name, label, character, residuals, bool(passed), detail)


def verify_surface(doc: dict, label: str, words: int = 100, seed: int = 0) -> list:
    """Run the oracle suite on one surface and return a list of oracle Reports."""
    from . import oracle
    G, T = parse_surface_spec(doc)
    T.validate()
    chars = select_characters(G, T, doc.get("character", "all"))
    out = []
    small = G.order <= oracle.ORACLE_MAX_ORDER
    if small:
        num = oracle.numeric_h1_dims(G, T)
        bad = [str(r) for r in enumerate_characters(G) if num[r] != summand_dimension(T, r)]
        out.append(_check("dimensions", label, "all", {"mismatches": len(bad)}, not bad, ", ".join(bad)))
    for rho in chars:
        if rho.is_trivial():
            continue
        exact = signature_exact(T, rho).as_tuple()
        try:
            sig = oracle.numeric_signature(G, T, rho)
            out.append(_check("signature", label, str(rho), {"numeric": list(sig), "exact": list(exact)},
                              sig == exact))
        except ConsistencyError as exc:
            out.append(_check("signature", label, str(rho), {}, False, str(exc)))
    try:
        gamma_generators(G, T, chars)
        out.append(_check("gamma_closed_forms", label, "all", {}, True))
    except ConsistencyError as exc:
        out.append(_check("gamma_closed_forms", label, "all", {}, False, str(exc)))
    g1 = gamma_one(T)
    wrong = []
    for rho in chars:
        if rho.is_trivial():
            continue
        M = restricted_action(g1, isotypic_basis(G, T, rho))
        if is_projectively_parabolic(M) != (rho(T[0] + T[1]).value == 0):
            wrong.append(str(rho))
    out.append(_check("gamma1_parabolic", label, "nontrivial", {"mismatches": len(wrong)}, not wrong,
                      ", ".join(wrong)))
    if small:
        graph = build_tuple_graph(G, T, include_m=False)
        ws = random_loop_words(affine_generators(graph), words, rng=random.Random(seed))
        for rho in chars:
            out.append(oracle.verify_invariance(G, T, ws, rho))
    if G.order == 8 and G.rank == 1 and [g.coords[0] for g in T] == [1, 1, 1, 5]:
        out.append(oracle.verify_named_cocycle(oracle.alpha_spec()))
    if "cocycle" in doc:
        out.append(oracle.verify_named_cocycle(cocycle_from_doc(G, T, doc["cocycle"])))
    return out


def cocycle_from_doc(G, T, c: dict):
    """A user cocycle: four value lists over ``G.elements()`` plus the characters it should live in."""
    from .oracle import CocycleSpec
    els = list(G.elements())
    try:
        tables = c["tables"]
        if len(tables) != 4 or any(len(t) != len(els) for t in tables):
            raise InvalidInput(f"cocycle needs 4 tables of length {len(els)}")
        index = {g: i for i, g in enumerate(els)}
        funcs = [(lambda t: (lambda g: complex(t[index[g]])))(t) for t in tables]
        chars = [Character(G, tuple(int(a) for a in d)) for d in c.get("characters", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed cocycle block: {exc}") from exc
    return CocycleSpec(c.get("name", "cocycle"), G, T, funcs, chars)


def cmd_verify(args) -> int:
    if args.corpus:
        targets = [(SPECS[n], n) for n in VERIFY_CORPUS]
    elif args.spec is not None:
        targets = [load_spec(args.spec)]
    else:
        raise InvalidInput("verify needs a surface or --corpus")
    reports = []
    for doc, label in targets:
        reports += verify_surface(doc, label, words=args.words, seed=args.seed)
    ok = all(r.passed for r in reports)
    payload = {"passed": ok, "checks": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        res = " ".join(f"{k}={v:.2e}" if isinstance(v, float) else f"{k}={v}" for k, v in r.residuals.items())
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.check:<20} {r.surface:<28} {r.character:<12} {res}"
                     + (f"  ({r.detail})" if r.detail else ""))
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_tables(args) -> int:
    rows = polyhedral_tables()
    payload = {"tables": [{"sum": r.total, "turns": None if r.turns is None else [rp.frac(t) for t in r.turns], "group": r.group}
                          for r in rows]}
    _emit(args, payload, tables_text())
    return EXIT_OK


# ------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pillowcase", description="Abelian covers of the pillowcase.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, spec: str | None = "required", help=""):
        p = sub.add_parser(name, help=help)
        if spec == "required":
            p.add_argument("spec", help="spec file or built-in surface name")
        elif spec == "optional":
            p.add_argument("spec", nargs="?", help="spec file or built-in surface name")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    add("info", cmd_info, help="geometric invariants and rel splitting")
    p = add("decompose", cmd_decompose, help="per-character classification")
    p.add_argument("--character", help='"all" or four turns "p/q,p/q,p/q,p/q"')
    p = add("graph", cmd_graph, help="tuple graph and affine generators")
    p.add_argument("--with-m", action="store_true", help="include automorphism edges")
    p.add_argument("--bound", type=int, default=10 ** 6, help="vertex bound")
    p = add("search", cmd_search, spec="optional", help="definite non-discrete characters")
    p.add_argument("--max-squares", type=int, help="exhaustive search up to this many squares")
    p.add_argument("--cap", type=int, default=64, help="refuse --max-squares above this")
    p = add("verify", cmd_verify, spec="optional", help="run the numeric oracle suite")
    p.add_argument("--corpus", action="store_true", help="verify the built-in corpus")
    p.add_argument("--words", type=int, default=100, help="random loop words per surface")
    p.add_argument("--seed", type=int, default=0)
    add("tables", cmd_tables, spec=None, help="dump the finiteness tables")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, DomainError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())

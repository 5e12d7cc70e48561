"""Floating-point verification layer.

Everything here is rebuilt from scratch with numpy: the coboundary from
shift operators on packed coefficient tables, the area form from the
cup-product pairing, and character values as complex exponentials. No exact
result from the other modules is imported; only group/tuple data and the
move labels of words are read.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .abelian import AbelianGroup, Character, GroupElement, enumerate_characters
from .errors import CapabilityError, ConsistencyError, InvalidInput
from .surface import BranchTuple

RANK_TOL = 1e-8
RESIDUAL_TOL = 1e-9
GAP_RATIO = 1e3
ORACLE_MAX_ORDER = 64


class ConditioningError(ConsistencyError):
    """Numeric rank could not be decided with a clear singular-value gap."""


def _elements(G: AbelianGroup) -> tuple[list[GroupElement], dict[GroupElement, int]]:
    els = list(G.elements())
    return els, {g: i for i, g in enumerate(els)}


def char_values(G: AbelianGroup, rho: Character) -> np.ndarray:
    """``rho(x)`` as complex numbers in element order."""
    return np.array([np.exp(2j * np.pi * float(rho(x).value)) for x in G.elements()])


def shift_matrix(G: AbelianGroup, h: GroupElement) -> np.ndarray:
    """Multiplication by ``h`` on coefficient tables: ``(hX)[x] = X[x - h]``."""
    els, idx = _elements(G)
    n = len(els)
    M = np.zeros((n, n))
    for i, x in enumerate(els):
        M[i, idx[x - h]] = 1.0
    return M


def coboundary_matrix(G: AbelianGroup, tuple_: BranchTuple) -> np.ndarray:
    """Dense ``2n x 4n`` matrix of ``(a+b+c+d, a + g2 b + g2g3 c + g2g3g4 d)``."""
    n = G.order
    _, g2, g3, g4 = tuple_.elements
    I = np.eye(n)
    top = np.hstack([I, I, I, I])
    bottom = np.hstack([I, shift_matrix(G, g2), shift_matrix(G, g2 + g3), shift_matrix(G, g2 + g3 + g4)])
    return np.vstack([top, bottom]).astype(complex)


def _rank(M: np.ndarray, what: str) -> tuple[int, np.ndarray, np.ndarray]:
    if M.size == 0:
        return 0, np.zeros(0), np.zeros((M.shape[1], M.shape[1]), dtype=complex)
    _, s, Vh = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    if smax == 0:
        return 0, s, Vh
    r = int(np.sum(s > RANK_TOL * smax))
    if r < s.size and s[r] > 0 and s[r - 1] / s[r] < GAP_RATIO:
        raise ConditioningError(
            f"{what}: ambiguous rank, singular values {s[max(r - 2, 0): r + 2]} have gap ratio "
            f"{s[r - 1] / s[r]:.3g} < {GAP_RATIO:g}")
    return r, s, Vh


def kernel_basis(M: np.ndarray, what: str = "kernel") -> np.ndarray:
    """Orthonormal kernel basis as columns."""
    r, _, Vh = _rank(M, what)
    return Vh[r:].conj().T


def projector(G: AbelianGroup, rho: Character) -> np.ndarray:
    """``(1/n) sum_g conj(rho(g)) (g-multiplication)`` acting on all four tables."""
    n = G.order
    P = np.zeros((n, n), dtype=complex)
    for g in G.elements():
        P += np.conj(np.exp(2j * np.pi * float(rho(g).value))) * shift_matrix(G, g)
    return np.kron(np.eye(4), P / n)


def numeric_h1_dims(G: AbelianGroup, tuple_: BranchTuple) -> dict[Character, int]:
    if G.order > ORACLE_MAX_ORDER:
        raise CapabilityError(f"oracle dimension check limited to |G| <= {ORACLE_MAX_ORDER}")
    Z = kernel_basis(coboundary_matrix(G, tuple_), "coboundary")
    out = {}
    for rho in enumerate_characters(G):
        out[rho] = _rank(projector(G, rho) @ Z, f"projection to {rho}")[0]
    return out


def isotypic_kernel(G: AbelianGroup, tuple_: BranchTuple, rho: Character) -> np.ndarray:
    """Orthonormal basis (columns, length 4n) of closed cochains in the rho-part."""
    n = G.order
    u = np.conj(char_values(G, rho)) / math.sqrt(n)
    U = np.kron(np.eye(4), u.reshape(n, 1))  # 4n x 4
    K = kernel_basis(coboundary_matrix(G, tuple_) @ U, f"coboundary on {rho}")
    return U @ K


def _pair(X: np.ndarray, Y: np.ndarray) -> complex:
    return complex(np.sum(X * np.conj(Y)))


def area_form(G: AbelianGroup, tuple_: BranchTuple, v: np.ndarray, w: np.ndarray) -> complex:
    """Cup-product area pairing of two packed cochains (vectors of length 4n)."""
    n = G.order
    _, h2, h3, h4 = tuple_.elements
    a, b, c, d = (v[k * n:(k + 1) * n] for k in range(4))
    a2, b2, c2, d2 = (w[k * n:(k + 1) * n] for k in range(4))
    S2 = shift_matrix(G, h2)
    S23 = shift_matrix(G, h2 + h3)
    S234 = shift_matrix(G, h2 + h3 + h4)
    total = (_pair(b, a2) - _pair(a, b2) + _pair(d, c2) - _pair(c, d2)
             - _pair(S2 @ b, a2) + _pair(a, S2 @ b2)
             - _pair(S234 @ d, S23 @ c2) + _pair(S23 @ c, S234 @ d2))
    return total / 4j


def area_gram(G: AbelianGroup, tuple_: BranchTuple, W: np.ndarray, W2: np.ndarray | None = None) -> np.ndarray:
    """``H[i][j] = A(w_j, w_i)`` (cross Gram when ``W2`` is given)."""
    W2 = W if W2 is None else W2
    return np.array([[area_form(G, tuple_, W[:, j], W2[:, i]) for j in range(W.shape[1])]
                     for i in range(W2.shape[1])])


def numeric_signature(G: AbelianGroup, tuple_: BranchTuple, rho: Character,
                      exact: tuple[int, int, int] | None = None) -> tuple[int, int, int]:
    """Eigenvalue sign counts ``(n0, n+, n-)`` of the numeric Gram matrix."""
    if rho.is_trivial():
        raise InvalidInput("numeric signature needs a nontrivial character")
    W = isotypic_kernel(G, tuple_, rho)
    H = area_gram(G, tuple_, W)
    H = (H + H.conj().T) / 2
    ev = np.linalg.eigvalsh(H)
    n0 = int(np.sum(np.abs(ev) <= RANK_TOL))
    sig = (n0, int(np.sum(ev > RANK_TOL)), int(np.sum(ev < -RANK_TOL)))
    if exact is not None and exact != sig:
        raise ConsistencyError(f"numeric signature {sig} (eigenvalues {ev}) differs from exact {exact} for {rho}")
    return sig


# ------------------------------------------------------------ named cocycles


@dataclass
class CocycleSpec:
    """Edge-type tables given as functions of the group element (packed coefficients)."""

    name: str
    group: AbelianGroup
    tuple: BranchTuple
    tables: Sequence[Callable[[GroupElement], float]]
    characters: Sequence[Character]


def alpha_spec() -> CocycleSpec:
    """The explicit real cocycle on the Z/8 surface with tuple (1,1,1,5)."""
    from .surface import cyclic_surface
    G, T = cyclic_surface(8, (1, 1, 1, 5))
    c8 = math.pi / 8

    def k(g):
        return g.coords[0]

    tables = [lambda g: -2 * math.cos(c8) * math.cos(k(g) * math.pi / 4),
              lambda g: math.cos(c8 + k(g) * math.pi / 4),
              lambda g: 0.0,
              lambda g: math.cos(c8 - k(g) * math.pi / 4)]
    chars = [rho for rho in enumerate_characters(G) if rho.dual_coords in ((1,), (7,))]
    return CocycleSpec("alpha", G, T, tables, chars)


def cochain_vector(spec: CocycleSpec) -> np.ndarray:
    return np.concatenate([np.array([f(x) for x in spec.group.elements()], dtype=complex)
                           for f in spec.tables])


@dataclass
class Report:
    check: str
    surface: str
    character: str
    residuals: dict
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def verify_named_cocycle(spec: CocycleSpec, closed_tol: float = 1e-12,
                         proj_tol: float = RESIDUAL_TOL) -> Report:
    G, T = spec.group, spec.tuple
    v = cochain_vector(spec)
    dv = coboundary_matrix(G, T) @ v
    closed = float(np.max(np.abs(dv))) if dv.size else 0.0
    detail = ""
    n = G.order
    if closed > closed_tol:
        els = list(G.elements())
        bad = int(np.argmax(np.abs(dv) > closed_tol))
        part, x = divmod(bad, n)
        # component 1 at -g is the B1_g boundary, component 2 at -g is the B2_g boundary
        detail = f"first violated square B{part + 1}_{-els[x]} (residual {abs(dv[bad]):.3g})"
    P = sum((projector(G, rho) for rho in spec.characters), np.zeros((4 * n, 4 * n), dtype=complex))
    proj = float(np.max(np.abs(P @ v - v))) if v.size else 0.0
    ok = closed <= closed_tol and proj <= proj_tol
    return Report("named_cocycle", f"{G} {T}", ",".join(str(r) for r in spec.characters),
                  {"closedness": closed, "projection": proj}, ok, detail)


# ------------------------------------------------------------ invariance


def move_matrix(G: AbelianGroup, tag: str, target: BranchTuple, deck: GroupElement | None = None) -> np.ndarray:
    """Pullback of a basic move on packed cochains (4n x 4n)."""
    n = G.order
    I, Z = np.eye(n), np.zeros((n, n))
    h1, h2, h3, h4 = target.elements
    if tag == "T":
        return np.block([[Z, I, Z, Z], [Z, Z, I, Z], [Z, Z, Z, I], [I, Z, Z, Z]])
    if tag == "S":
        Sh = shift_matrix(G, h1)
        return np.block([[-Sh, Z, Z, Z], [I, I, Z, Z], [Z, Z, I, Z], [Sh, Z, Z, I]])
    if tag == "F":
        return np.block([[-I, Z, Z, Z], [Z, Z, Z, -shift_matrix(G, h2 + h3 + h4)],
                         [Z, Z, -shift_matrix(G, h2 + h3), Z], [Z, -shift_matrix(G, h2), Z, Z]])
    if tag == "R":
        return np.kron(np.eye(4), shift_matrix(G, deck))
    raise InvalidInput(f"oracle cannot build a pullback for move {tag}")


PullbackBuilder = Callable[[AbelianGroup, str, BranchTuple, GroupElement | None], np.ndarray]


def word_matrix(G: AbelianGroup, word, builder: PullbackBuilder = move_matrix) -> np.ndarray:
    P = np.eye(4 * G.order, dtype=complex)
    for st in word.steps:
        e = st.edge
        Q = builder(G, e.move.tag, e.target, e.move.deck)
        P = P @ (Q if st.forward else np.linalg.inv(Q))
    return P


def verify_invariance(G: AbelianGroup, tuple_: BranchTuple, words: Sequence, rho: Character,
                      builder: PullbackBuilder = move_matrix, tol: float = RESIDUAL_TOL) -> Report:
    """Area-form invariance and summand preservation of loop pullbacks on H1(rho)."""
    W = isotypic_kernel(G, tuple_, rho)
    others = {chi: isotypic_kernel(G, tuple_, chi) for chi in enumerate_characters(G)}
    H = area_gram(G, tuple_, W)
    inv_res = 0.0
    leak = 0.0
    worst = ""
    for w in words:
        P = word_matrix(G, w, builder)
        PW = P @ W
        # best matching summand: smallest component outside it
        lk = min(float(np.max(np.abs(PW - Wc @ (Wc.conj().T @ PW)), initial=0.0)) for Wc in others.values())
        r = float(np.max(np.abs(area_gram(G, tuple_, PW) - H), initial=0.0))
        if lk > leak:
            leak = lk
        if r > inv_res:
            inv_res = r
        if max(lk, r) > tol and not worst:
            worst = f"word {w.export()} leaks {lk:.3g} / breaks invariance by {r:.3g}"
    ok = inv_res <= tol and leak <= tol
    return Report("invariance", f"{G} {tuple_}", str(rho),
                  {"invariance": inv_res, "leakage": leak, "words": len(words)}, ok, worst)


def cross_gram_max(G: AbelianGroup, tuple_: BranchTuple) -> float:
    """Largest area pairing between different summands."""
    bases = {rho: isotypic_kernel(G, tuple_, rho) for rho in enumerate_characters(G)}
    out = 0.0
    for r1, W1 in bases.items():
        for r2, W2 in bases.items():
            if r1 != r2 and W1.size and W2.size:
                out = max(out, float(np.max(np.abs(area_gram(G, tuple_, W1, W2)))))
    return out

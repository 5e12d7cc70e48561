import random

import pytest

from pillowcase.abelian import AbelianGroup, enumerate_abelian_groups, generates
from pillowcase.corpus import named
from pillowcase.surface import BranchTuple


@pytest.fixture(scope="session")
def wollmilchsau():
    return named("wollmilchsau")


@pytest.fixture(scope="session")
def ornithorynque():
    return named("ornithorynque")


@pytest.fixture(scope="session")
def z3():
    return named("z3")


@pytest.fixture(scope="session")
def z8():
    return named("z8")


def random_instances(count: int, max_order: int, seed: int = 0, max_rank: int = 3):
    """Random generating zero-sum tuples over groups of bounded order."""
    rng = random.Random(seed)
    groups = [G for G in enumerate_abelian_groups(max_order, max_rank=max_rank) if G.order > 1]
    out = []
    while len(out) < count:
        G = rng.choice(groups)
        els = list(G.elements())
        g1, g2, g3 = (rng.choice(els) for _ in range(3))
        T = BranchTuple(G, (g1, g2, g3, -(g1 + g2 + g3)))
        if generates(G, T.elements):
            out.append((G, T))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])

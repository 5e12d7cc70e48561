# %% [markdown]
# # Affine moves and their action
#
# The tuple graph records how the moves t, s, f act on branch tuples.
# Loops in the graph give affine diffeomorphisms; we check that their
# action on cohomology preserves each character summand.

# %%
import random

from pillowcase import oracle
from pillowcase.abelian import enumerate_characters
from pillowcase.affine import affine_generators, build_tuple_graph, random_loop_words, word_derivative
from pillowcase.corpus import named

G, T = named("ornithorynque")
graph = build_tuple_graph(G, T)
print(graph.num_vertices, "vertices")
for e in graph.edges:
    print(e.move.tag, e.source, "->", e.target)

# %%
gens = affine_generators(graph)
for w in gens:
    print(w.name, word_derivative(w))

# %% [markdown]
# Random products of generators, checked numerically against each summand.

# %%
words = random_loop_words(gens, 20, rng=random.Random(1))
for rho in enumerate_characters(G):
    rep = oracle.verify_invariance(G, T, words, rho)
    print(rho, "pass" if rep.passed else "FAIL", rep.residuals)

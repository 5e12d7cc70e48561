# %% [markdown]
# # A tour of one cover
#
# The Ornithorynque is the Z/6 cover of the pillowcase with branch tuple
# (1,1,1,3). We build it from its square tiling, read off its invariants,
# and split first cohomology into character summands.

# %%
from pillowcase.abelian import enumerate_characters
from pillowcase.cohomology import global_rel_split, restriction_classify, summand_dimension
from pillowcase.corpus import named
from pillowcase.surface import build_surface, geometric_invariants

G, T = named("ornithorynque")
S = build_surface(G, T)
inv = geometric_invariants(S)
print(G, T)
print("genus", inv.genus, "stratum", inv.stratum, "translation", inv.translation)

# %% [markdown]
# Each nontrivial character contributes a two-dimensional summand and the
# trivial one contributes three. The absolute part sums to twice the genus.

# %%
total_abs = 0
for rho in enumerate_characters(G):
    rc = restriction_classify(T, rho)
    total_abs += rc.abs_dim
    print(rho, "dim", summand_dimension(T, rho), rc.case, "abs", rc.abs_dim)
print("sum of absolute dimensions", total_abs, "= 2g =", 2 * inv.genus)

# %% [markdown]
# The restriction to relative cohomology fails to split here; the witness is
# the character whose summand meets the kernel.

# %%
rel = global_rel_split(G, T)
print("splits" if rel.splits else f"does not split, witness {rel.witness}")

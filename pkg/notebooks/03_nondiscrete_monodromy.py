# %% [markdown]
# # Definite summands with non-discrete monodromy
#
# A summand with definite signature carries a spherical triangle group.
# When that group is infinite, the monodromy cannot be discrete. We look at
# the order-480 example and then search small covers for the first hits.

# %%
from pillowcase.corpus import order480_character
from pillowcase.hodge import (discreteness_verdict, minimal_square_search, signature_exact,
                              triangle_data, turns_of)

G, T, rho = order480_character()
print(G, T)
print("turns", [str(t) for t in turns_of(T, rho)])
print("signature", signature_exact(T, rho))
print("triangle angles / pi", [str(a) for a in triangle_data(T, rho).angles])
v = discreteness_verdict(T, rho)
print(v.verdict, "-", v.reason)

# %% [markdown]
# The smallest translation covers with such a summand have 16 squares.

# %%
for h in minimal_square_search(16):
    print(h.squares, h.group, h.tuple, h.character)
print("hits at 14 squares:", len(minimal_square_search(14)))

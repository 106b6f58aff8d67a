"""Three kinds of prime filter, and an algebra that tells them apart."""

# %%
from qbforge import catalog
from qbforge.algebra import check_mtl
from qbforge.primes import classify_filter, mtl_iff_theorem, prime_classes, prime_extension
from qbforge.filters import all_filters

A = catalog("heyting-d5")
for F in all_filters(A):
    c = classify_filter(A, F)
    print(f"{A.format_set(F):<14} →:{c.to_prime!s:<6} ⇝:{c.lto_prime!s:<6} ∨:{c.vee_prime}")

# %% [markdown]
# `a` and `b` are incomparable and both `a→b` and `b→a` miss `1`, so `{1}` is
# not →-prime.  Nothing joins to `1` except `1`, so it is ∨-prime.

# %%
print(check_mtl(A))
print(mtl_iff_theorem(A).holds)

# %%
G = prime_extension(A, A.mask(["1"]), A.index("c"))
print("largest filter over {1} missing c:", A.format_set(G))

# %%
L = catalog("lukasiewicz:5")
pc = prime_classes(L)
print(pc["PF"] == pc["PF_vee"])

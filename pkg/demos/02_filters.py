"""Filters, the map F ∩ X, and an order-of-factors surprise."""

# %%
from qbforge import catalog
from qbforge.algebra import check_integral
from qbforge.filters import all_filters, generated_filter, mu_law_suite
from qbforge.forge import sweep

for name in ("godel:3", "lukasiewicz:3", "heyting-d5"):
    A = catalog(name)
    print(name, [A.format_set(F) for F in all_filters(A)])

# %%
A = catalog("heyting-d5")
print("[a) =", A.format_set(generated_filter(A, [A.index("a")])))

# %% [markdown]
# The law suite checks the intersection map against every filter and upper
# set.  On the catalog it is clean.

# %%
print(mu_law_suite(catalog("heyting-d5")).holds)

# %% [markdown]
# Over the whole size-4 sweep two items fail when the factors are written in
# one order, and hold in the other (primed ids).

# %%
for B in sweep(4):
    if check_integral(B):
        report = mu_law_suite(B)
        for v in report.violations:
            print(B.name, v.law_id, [B.format_set(m) for m in v.witness])

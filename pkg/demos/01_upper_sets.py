"""Upper sets of a small algebra and the quantale they form."""

# %%
from qbforge import catalog
from qbforge.quantale import QuantaleView, list_upper_sets, umul, ures_l, ures_r, up

A = catalog("godel:3")
print(A.name, A.labels)

# %% [markdown]
# Upper sets are stored as bitmasks.  A three-element chain has four of them,
# counting the empty set.

# %%
sets = list_upper_sets(A)
print([A.format_set(X) for X in sets])

# %%
a = up(A, A.index("a"))
for X in sets:
    print(f"{A.format_set(a)} · {A.format_set(X)} = {A.format_set(umul(A, a, X))}")

# %% [markdown]
# Both residuals are right adjoints of the product, one per side.

# %%
one = A.mask(["1"])
print("{a,1} → {1} =", A.format_set(ures_r(A, a, one)))
print("{a,1} ⇝ {1} =", A.format_set(ures_l(A, a, one)))

# %%
view = QuantaleView(A)
flags = view.supercompact_flags()
print("supercompact:", [A.format_set(view.sets[i]) for i in range(view.k) if flags[i]])

"""Exhaustive search over small algebras."""

# %%
from qbforge.fileformat import dumps
from qbforge.forge import SearchSpec, enumerate_algebras, find_counterexamples

for cls in ("integral-qb", "residuated", "pseudo-hoop"):
    algs = list(enumerate_algebras(SearchSpec(max_size=4, target_class=cls)))
    print(cls, [sum(A.n == k for A in algs) for k in range(1, 5)])

# %% [markdown]
# Predicates are small Python expressions over a fixed set of property names.

# %%
spec = SearchSpec(max_size=5, target_class="residuated-vsl", predicate="PF_to != PF_vee")
found = find_counterexamples(spec)
print(len(found), "separators of size ≤ 5")
print(dumps(found[0][0]))

# %%
spec = SearchSpec(max_size=5, target_class="pseudo-hoop", predicate="not commutative")
print("noncommutative pseudo-hoops of size ≤ 5:", len(find_counterexamples(spec)))

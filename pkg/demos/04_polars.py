"""Polars in pseudo-hoops and a subdirect splitting."""

# %%
from qbforge import catalog
from qbforge.forge import SearchSpec, enumerate_algebras
from qbforge.hoops import polar, polar_embedding, subdirect_witness

P = catalog("prod(chain:2,chain:2)")
M = P.mask(["(0,1)"])
print("M⊥  =", P.format_set(polar(P, M)))
print("M⊥⊥ =", P.format_set(polar(P, polar(P, M))))

# %%
emb, report = polar_embedding(P, M)
print("image:", P.format_set(emb.image), "laws hold:", report.holds)

# %% [markdown]
# In the square the two polars already cover everything, so no proper
# splitting shows up.  At five elements one does.

# %%
for A in enumerate_algebras(SearchSpec(max_size=5, min_size=5, target_class="pseudo-hoop")):
    for M in range(1 << A.n):
        w = subdirect_witness(A, M)
        if w is not None:
            L = A.labels
            print(A.name, "M =", A.format_set(M))
            print(f"  {L[w.y]} = {L[w.y1]} ∧ {L[w.y2]}, filters",
                  A.format_set(w.F1), A.format_set(w.F2))
            break
    else:
        continue
    break

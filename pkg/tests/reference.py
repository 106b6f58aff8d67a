"""Slow reference implementations written straight from the definitions.

Nothing here imports package internals beyond the raw tables of an algebra,
so agreement with the package is a genuine cross-check.
"""

from __future__ import annotations

import itertools
from functools import reduce


def elements(A):
    return range(A.n)


def leq(A, x, y):
    return bool(A.leq[x, y])


def upper_sets(A):
    E = list(elements(A))
    out = []
    for r in range(len(E) + 1):
        for s in itertools.combinations(E, r):
            S = frozenset(s)
            if all(b in S for a in S for b in E if leq(A, a, b)):
                out.append(S)
    return out


def to_mask(S):
    return reduce(lambda m, i: m | (1 << i), S, 0)


def from_mask(m):
    return frozenset(i for i in range(m.bit_length()) if m >> i & 1)


def umul(A, X, Y):
    """X·Y = {a | some y ∈ Y has y→a ∈ X}."""
    return frozenset(a for a in elements(A) if any(int(A.to[y, a]) in X for y in Y))


def umul_products(A, X, Y):
    """Residuated form: the up-closure of {x·y}."""
    return frozenset(a for a in elements(A)
                     if any(leq(A, int(A.mul[x, y]), a) for x in X for y in Y))


def res_r(A, Y, Z):
    """Y→Z = {x | for y ∈ Y and z: y→z ≥ x implies z ∈ Z}."""
    return frozenset(x for x in elements(A)
                     if all(z in Z for y in Y for z in elements(A) if leq(A, x, int(A.to[y, z]))))


def res_l(A, X, Z):
    return frozenset(y for y in elements(A)
                     if all(z in Z for x in X for z in elements(A) if leq(A, y, int(A.lto[x, z]))))


def is_filter(A, F):
    return bool(F) and F in set(upper_sets(A)) and umul(A, F, F) <= F


def filters(A):
    return [F for F in upper_sets(A) if is_filter(A, F)]


def generated(A, X):
    """Intersection of every filter containing X."""
    full = frozenset(elements(A))
    return reduce(lambda a, b: a & b, [F for F in filters(A) if X <= F], full)


def join(A, x, y):
    ubs = [z for z in elements(A) if leq(A, x, z) and leq(A, y, z)]
    least = [z for z in ubs if all(leq(A, z, w) for w in ubs)]
    return least[0] if least else None


def meet(A, x, y):
    lbs = [z for z in elements(A) if leq(A, z, x) and leq(A, z, y)]
    top = [z for z in lbs if all(leq(A, w, z) for w in lbs)]
    return top[0] if top else None


def coprime(A, x, y):
    """The unit is the only common upper bound of x and y."""
    return [z for z in elements(A) if leq(A, x, z) and leq(A, y, z)] == [A.unit]


def polar(A, M):
    return frozenset(x for x in elements(A) if all(coprime(A, x, y) for y in M))


def prime_kinds(A, F):
    E = list(elements(A))
    to_p = all(int(A.to[x, y]) in F or int(A.to[y, x]) in F for x in E for y in E)
    lto_p = all(int(A.lto[x, y]) in F or int(A.lto[y, x]) in F for x in E for y in E)
    vee_p = all(x in F or y in F for x in E for y in E if join(A, x, y) in F)
    return to_p, lto_p, vee_p


def pseudo_hoop_axioms(A):
    """The five defining identities written out literally, plus x ≤ y iff x→y = 1."""
    E = list(elements(A))
    M, T, L, one = A.mul, A.to, A.lto, A.unit
    if M is None or one is None:
        return False
    for x in E:
        if M[x, one] != x or M[one, x] != x or T[x, x] != one or L[x, x] != one:
            return False
    for x, y, z in itertools.product(E, repeat=3):
        if T[M[x, y], z] != T[x, T[y, z]] or L[M[x, y], z] != L[y, L[x, z]]:
            return False
    for x, y in itertools.product(E, repeat=2):
        d = M[T[x, y], x]
        if not (d == M[T[y, x], y] == M[x, L[x, y]] == M[y, L[y, x]]):
            return False
        if leq(A, x, y) != (T[x, y] == one):
            return False
    return True

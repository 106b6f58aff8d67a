"""Polars, the polar-product embedding, ν_F and normal filters on pseudo-hoops.

"x ∨ y = 1" is read as: the unit is the only common upper bound of x and y,
which needs no join-semilattice assumption (see ``FiniteAlgebra.coprime``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import ClassReport, FiniteAlgebra, _vars, check_pseudo_hoop, members
from .errors import DecompositionFailed, NotAHoop, OracleMismatch, TheoremViolation
from .filters import all_filters, generated_filter, is_filter


def require_hoop(A: FiniteAlgebra) -> None:
    report = check_pseudo_hoop(A)
    if not report.holds:
        raise NotAHoop(f"{A.name or 'algebra'} is not a pseudo-hoop: {report.violations[0]}")


def _all_subsets(n: int):
    return range(1 << n)


# ---- polars ----------------------------------------------------------------


def polar(A: FiniteAlgebra, M: int) -> int:
    """M⊥ = {x | x ∨ y = 1 for every y ∈ M}; always a filter."""
    ok = np.ones(A.n, dtype=bool)
    for y in members(M):
        ok &= A.coprime[:, y]
    P = 0
    for x in np.flatnonzero(ok):
        P |= 1 << int(x)
    if not is_filter(A, P):
        raise TheoremViolation(f"polar of {A.format_set(M)} is not a filter")
    return P


def polar_laws(A: FiniteAlgebra) -> ClassReport:
    """Over every subset M (and pair M ⊆ N): antitone, M ⊆ M⊥⊥, M⊥ = M⊥⊥⊥."""
    require_hoop(A)
    subsets = list(_all_subsets(A.n))
    P = {M: polar(A, M) for M in subsets}
    PP = {M: polar(A, P[M]) for M in subsets}
    report = ClassReport("polars")
    anti = next(((M, N) for M in subsets for N in subsets
                 if M & ~N == 0 and P[N] & ~P[M]), None)
    report.add("polar.antitone", anti is None, anti or ())
    ext = next((M for M in subsets if M & ~PP[M]), None)
    report.add("polar.extensive", ext is None, () if ext is None else (ext,))
    tri = next((M for M in subsets if polar(A, PP[M]) != P[M]), None)
    report.add("polar.triple", tri is None, () if tri is None else (tri,))
    return report


def coprime_laws(A: FiniteAlgebra) -> ClassReport:
    """For x ∨ y = 1: x·y = x∧y = y·x, x→y = x⇝y = y and y→x = y⇝x = x."""
    require_hoop(A)
    M, T, L, W, C = A.mul, A.to, A.lto, A.meet_table, A.coprime
    x, y = _vars(A.n, 2)
    ok = ((M[x, y] == W[x, y]) & (M[y, x] == W[x, y])
          & (T[x, y] == y) & (L[x, y] == y) & (T[y, x] == x) & (L[y, x] == x))
    report = ClassReport("coprime")
    report.add("coprime", ~C | ok)
    return report


# ---- product of polars -----------------------------------------------------


@dataclass(frozen=True)
class PairEmbedding:
    """f(x, y) = x ∧ y on M⊥ × M⊥⊥."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    image: int

    def __call__(self, A: FiniteAlgebra, x: int, y: int) -> int:
        return int(A.meet_table[x, y])

    def preimage(self, A: FiniteAlgebra, z: int) -> list[tuple[int, int]]:
        return [(x, y) for x in self.left for y in self.right if A.meet_table[x, y] == z]


def polar_embedding(A: FiniteAlgebra, M: int) -> tuple[PairEmbedding, ClassReport]:
    require_hoop(A)
    P = polar(A, M)
    Q = polar(A, P)
    left, right = members(P), members(Q)
    pairs = list(itertools.product(left, right))
    W, Mul, T, L = A.meet_table, A.mul, A.to, A.lto
    f = {p: int(W[p]) for p in pairs}
    report = ClassReport("polar-embedding")
    seen: dict[int, tuple] = {}
    clash = None
    for p, z in f.items():
        if z in seen and clash is None:
            clash = (seen[z], p)
        seen.setdefault(z, p)
    report.add("emb.injective", clash is None,
               () if clash is None else (*clash[0], *clash[1]))
    for law, op in (("emb.mul", Mul), ("emb.to", T), ("emb.lto", L)):
        bad = next(((x1, y1, x2, y2) for (x1, y1), (x2, y2) in itertools.product(pairs, repeat=2)
                    if op[f[(x1, y1)], f[(x2, y2)]] != W[op[x1, x2], op[y1, y2]]), None)
        report.add(law, bad is None, bad or ())
    image = 0
    for z in f.values():
        image |= 1 << z
    product = 0
    for x, y in pairs:
        product |= 1 << int(Mul[x, y])
    report.add("emb.image", image == product, (image, product))
    return PairEmbedding(left, right, image), report


# ---- ν_F ---------------------------------------------------------------------


@dataclass(frozen=True)
class NuResult:
    bounds: int
    least: int | None


def _upper_bounds(A: FiniteAlgebra, X: int) -> int:
    out = A.full
    for x in members(X):
        out &= A.up[x]
    return out


def nu(A: FiniteAlgebra, F: int, X: int) -> NuResult:
    """ν_F(X): the upper bounds of X inside F, and their least element if any."""
    direct = 0
    for a in members(F):
        if all(A.leq[x, a] for x in members(X)):
            direct |= 1 << a
    via_mu = F & _upper_bounds(A, X)
    if direct != via_mu:
        raise OracleMismatch(f"ν_F({A.format_set(X)}) differs between the two definitions")
    least = next((a for a in members(direct) if direct & ~A.up[a] == 0), None)
    return NuResult(direct, least)


def lifted(A: FiniteAlgebra, X: int, Y: int, op: str) -> int:
    """Elementwise image {x ∘ y | x ∈ X, y ∈ Y} for ∘ in {'mul', 'to', 'lto'}."""
    table = {"mul": A.mul, "to": A.to, "lto": A.lto}[op]
    out = 0
    for x in members(X):
        for y in members(Y):
            out |= 1 << int(table[x, y])
    return out


def nu_filter_theorem(A: FiniteAlgebra, F: int, X: int) -> ClassReport:
    """ν_F(ν_F(X)→X) and ν_F(ν_F(X)⇝X) are filters; for X = {x} the least
    elements ν̂_F(ν̂_F(x)→x), ν̂_F(ν̂_F(x)⇝x) exist and are idempotent."""
    report = ClassReport("nu-filter")
    base = nu(A, F, X)
    for op, side in (("to", "nu.to"), ("lto", "nu.lto")):
        Y = lifted(A, base.bounds, X, op)
        N = nu(A, F, Y).bounds
        report.add(f"{side}_filter", is_filter(A, N), (F, X))
        # intermediate identity of the argument: ν_F(ν_F(X)∘X)·ν_F(X) = ν_F(X)
        report.add(f"{side}_absorb", lifted(A, N, base.bounds, "mul") == base.bounds, (F, X))
    xs = members(X)
    if len(xs) == 1 and base.least is not None:
        x = xs[0]
        for op, table in (("to", A.to), ("lto", A.lto)):
            t = int(table[base.least, x])
            w = nu(A, F, 1 << t).least
            ok = w is not None and A.mul[w, w] == w
            report.add(f"nu.hat_{op}", ok, (F, X))
    return report


# ---- normal filters ----------------------------------------------------------


def is_normal_filter(A: FiniteAlgebra, F: int) -> bool:
    """x→y ∈ F ⇔ x⇝y ∈ F for all x, y."""
    b = A.bits(F)
    return bool((b[A.to] == b[A.lto]).all())


def filter_minimum(A: FiniteAlgebra, F: int) -> int | None:
    return next((a for a in members(F) if F & ~A.up[a] == 0), None)


def least_element_normal(A: FiniteAlgebra) -> ClassReport:
    """Every filter with a least element a has a·a = a, a·x = x·a, and is normal."""
    require_hoop(A)
    report = ClassReport("least-element-normal")
    first: dict[str, tuple] = {}
    for F in all_filters(A):
        a = filter_minimum(A, F)
        if a is None:
            continue
        if A.mul[a, a] != a:
            first.setdefault("len.idempotent", (F,))
        bad = np.flatnonzero(A.mul[a, :] != A.mul[:, a])
        if bad.size:
            first.setdefault("len.central", (F, int(bad[0])))
        if not is_normal_filter(A, F):
            first.setdefault("len.normal", (F,))
    for law in ("len.idempotent", "len.central", "len.normal"):
        report.add(law, law not in first, first.get(law, ()))
    return report


# ---- subdirect reducibility --------------------------------------------------


@dataclass(frozen=True)
class SubdirectWitness:
    x: int
    y: int
    y1: int
    y2: int
    F1: int
    F2: int


def subdirect_witness(A: FiniteAlgebra, M: int) -> SubdirectWitness | None:
    """Two non-trivial normal filters meeting in {1}, built from an x outside M⊥·M⊥⊥."""
    require_hoop(A)
    emb, _ = polar_embedding(A, M)
    S = emb.image
    one = A.unit
    for x in range(A.n):
        if (S >> x) & 1:
            continue
        v = nu(A, S, 1 << x).least
        if v is None:
            continue
        y = nu(A, S, 1 << int(A.to[v, x])).least
        if y is None:
            raise DecompositionFailed(f"ν̂ of {A.labels[v]}→{A.labels[x]} is missing")
        pre = emb.preimage(A, y)
        if len(pre) != 1 or one in pre[0]:
            raise DecompositionFailed(f"{A.labels[y]} has no decomposition y1∧y2 with y1, y2 ≠ 1")
        y1, y2 = pre[0]
        if A.mul[y1, y1] != y1 or A.mul[y2, y2] != y2:
            raise DecompositionFailed("components are not idempotent")
        F1, F2 = generated_filter(A, [y1]), generated_filter(A, [y2])
        if not (is_normal_filter(A, F1) and is_normal_filter(A, F2)) or F1 & F2 != 1 << one:
            raise DecompositionFailed("generated filters are not normal or meet above {1}")
        return SubdirectWitness(x, y, y1, y2, F1, F2)
    return None


# ---- full suite --------------------------------------------------------------


def hoop_suite(A: FiniteAlgebra) -> ClassReport:
    """Every pseudo-hoop statement over all subsets M, filters F and subsets X."""
    require_hoop(A)
    report = ClassReport("hoop-suite")
    report.merge(polar_laws(A))
    report.merge(coprime_laws(A))
    for M in _all_subsets(A.n):
        _, emb = polar_embedding(A, M)
        for v in emb.violations:
            report.violations.append(v._replace(witness=(M, *v.witness)))
        report.checked.extend(c for c in emb.checked if c not in report.checked)
    for F in all_filters(A):
        for X in _all_subsets(A.n):
            sub = nu_filter_theorem(A, F, X)
            for v in sub.violations:
                if not report.failed(v.law_id):
                    report.violations.append(v)
            report.checked.extend(c for c in sub.checked if c not in report.checked)
    report.merge(least_element_normal(A))
    return report

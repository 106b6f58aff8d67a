"""Filters of quantum B-algebras, generated filters and the μ_F law suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from .algebra import ClassReport, FiniteAlgebra, check_integral, check_two_sided, members
from .errors import OracleMismatch, PreconditionViolated
from .quantale import QuantaleView, list_upper_sets, umul, upper_closure


def _rule_closed(A: FiniteAlgebra, F: int) -> bool:
    """y ∈ F and y→z ∈ F imply z ∈ F."""
    to, _, _ = A.rows
    for y in members(F):
        row = to[y]
        for z in range(A.n):
            if (F >> row[z]) & 1 and not (F >> z) & 1:
                return False
    return True


def is_filter(A: FiniteAlgebra, X: int) -> bool:
    """Non-empty upper set with X·X ⊆ X; the element rule is evaluated too and must agree."""
    if X == 0 or upper_closure(A, members(X)) != X:
        return False
    by_product = umul(A, X, X) & ~X == 0
    if by_product != _rule_closed(A, X):
        raise OracleMismatch(f"filter tests disagree on {A.format_set(X)}")
    return by_product


def _closure_fixpoint(A: FiniteAlgebra, seed: int) -> int:
    to, _, _ = A.rows
    F = upper_closure(A, members(seed))
    while True:
        new = F
        for y in members(F):
            row = to[y]
            for z in range(A.n):
                if (F >> row[z]) & 1:
                    new |= A.up[z]
        if new == F:
            return F
        F = new


def _closure_products(A: FiniteAlgebra, seed: int) -> int:
    """Upward closure of all finite products x1·...·xn of seed elements."""
    _, _, mul = A.rows
    gens = members(seed)
    words = set(gens)
    frontier = set(gens)
    while frontier:
        fresh = {mul[w][g] for w in frontier for g in gens} - words
        words |= fresh
        frontier = fresh
    return upper_closure(A, words)


def generated_filter(A: FiniteAlgebra, elements: Iterable[int]) -> int:
    """The least filter [X) containing the given elements."""
    seed = 0
    for x in elements:
        seed |= 1 << x
    if seed == 0:
        raise PreconditionViolated("generated_filter needs a non-empty set")
    F = _closure_fixpoint(A, seed)
    if A.is_residuated:
        G = _closure_products(A, seed)
        if F != G:
            raise OracleMismatch(
                f"[X) by closure {A.format_set(F)} != by products {A.format_set(G)}")
    return F


def _alternating_products(A: FiniteAlgebra, F: int, a: int) -> int:
    """Upward closure of x1·a·x2·a·...·a·xn with every xi ∈ F."""
    _, _, mul = A.rows
    fs = members(F)
    words = set(fs)
    frontier = set(fs)
    while frontier:
        fresh = {mul[mul[w][a]][x] for w in frontier for x in fs} - words
        words |= fresh
        frontier = fresh
    return upper_closure(A, words)


def extend_filter(A: FiniteAlgebra, F: int, a: int) -> int:
    """[F ∪ {a}) for a 2-sided residuated A, by closure and by alternating words."""
    if (F >> a) & 1:
        raise PreconditionViolated(f"{A.labels[a]} already lies in the filter")
    if not (A.is_residuated and check_two_sided(A)):
        raise PreconditionViolated("extend_filter needs a 2-sided residuated poset")
    G = _closure_fixpoint(A, F | (1 << a))
    H = _alternating_products(A, F, a)
    if G != H:
        raise OracleMismatch(
            f"[F∪{{a}}) by closure {A.format_set(G)} != by words {A.format_set(H)}")
    return G


@dataclass(frozen=True)
class FilterLattice:
    """All filters of an algebra, ordered by (size, bitmask)."""

    filters: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.filters)

    def __len__(self) -> int:
        return len(self.filters)

    def __contains__(self, F: int) -> bool:
        return F in self.filters

    def intersection_closed(self) -> bool:
        fs = set(self.filters)
        return all((F & G) in fs for F in fs for G in fs if F & G)

    def above(self, F: int) -> list[int]:
        return [G for G in self.filters if F & ~G == 0]


def all_filters(A: FiniteAlgebra, cap: int | None = None) -> FilterLattice:
    cached = A.__dict__.get("_filters")
    if cached is None:
        fs = tuple(X for X in list_upper_sets(A, cap) if X and _rule_closed(A, X))
        cached = A.__dict__["_filters"] = FilterLattice(fs)
    return cached


def mu(F: int, X: int) -> int:
    """μ_F(X) = F ∩ X."""
    return F & X


def mu_law_suite(A: FiniteAlgebra, cap: int | None = None,
                 mu_map: Callable[[int, int], int] = mu) -> ClassReport:
    """Every statement about μ_F over all filters F and upper sets X, Y of an integral A.

    Witnesses are ``(F, X)`` or ``(F, X, Y)`` bitmasks.  ``mu_map`` exists so
    the harness itself can be tested against a broken μ.
    """
    if not check_integral(A):
        raise PreconditionViolated("the μ_F suite needs an integral quantum B-algebra")
    view = QuantaleView(A, cap)
    M, RR, RL, S = view.mul, view.res_r, view.res_l, view.subset
    idx, sets = view.index, view.sets
    one = 1 << A.unit
    report = ClassReport("mu-suite")
    first: dict[str, tuple] = {}
    laws = ["L1", "L2", "conucleus", "P1", "P2", "P3",
            "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C4'", "C5'"]

    def fail(law, witness):
        first.setdefault(law, witness)

    def filt(i):
        return sets[i] != 0 and S[M[i, i], i]

    k = view.k
    for F in all_filters(A, cap):
        mu_idx = []
        for X in sets:
            m = mu_map(F, X)
            if m not in idx:
                fail("conucleus", (F, X))
                m = F & X
            mu_idx.append(idx[m])
        m_ = np.array(mu_idx)
        xs = np.arange(k)
        # conucleus: monotone, deflationary, idempotent
        mono = ~S[xs[:, None], xs[None, :]] | S[m_[:, None], m_[None, :]]
        if not (mono.all() and S[m_, xs].all() and (m_[m_] == m_).all()):
            fail("conucleus", (F,))
        # L1: μ(X)·μ(Y) ⊆ μ(X·Y)
        l1 = S[M[m_[:, None], m_[None, :]], m_[M]]
        bad = np.argwhere(~l1)
        if bad.size:
            i, j = bad[0]
            fail("L1", (F, sets[i], sets[j]))
        # L2: U(F) = image of μ_F is a subquantale
        image = sorted(set(mu_idx))
        image_set = set(image)
        uf = [i for i in range(k) if sets[i] & ~F == 0]
        if image_set != set(uf) or view.empty not in image_set or any(
                M[i, j] not in image_set or view.union[i, j] not in image_set
                for i in image for j in image):
            fail("L2", (F,))
        for x in range(k):
            X = sets[x]
            mx = m_[x]
            # P1: μ_F(X) = μ_{μ_F(X)·μ_F(X)}(X)
            if sets[mx] != mu_map(sets[M[mx, mx]], X):
                fail("P1", (F, X))
            w = RL[mx, RR[mx, x]]          # μ⇝(μ→X)
            has_one = bool(sets[w] & one)
            if has_one and M[M[mx, m_[w]], mx] != mx:
                fail("P2", (F, X))
            if filt(mx) != bool(sets[mx] & sets[w] & one):
                fail("P3", (F, X))
            if not X & one:
                continue
            r, l = RR[mx, x], RL[mx, x]    # μ→X, μ⇝X
            mr, ml = m_[r], m_[l]
            if not (M[mx, ml] == mx and M[mr, mx] == mx):
                fail("C1", (F, X))
            if RR[mr, r] != r:
                fail("C2", (F, X))
            if RL[ml, l] != l:
                fail("C3", (F, X))
            if M[mr, r] != r:
                fail("C4", (F, X))
            if M[l, ml] != l:
                fail("C5", (F, X))
            if M[r, mr] != r:
                fail("C4'", (F, X))
            if M[ml, l] != l:
                fail("C5'", (F, X))
            if M[mr, mr] != mr or (sets[mr] & one and not filt(mr)):
                fail("C6", (F, X))
            if M[ml, ml] != ml or (sets[ml] & one and not filt(ml)):
                fail("C7", (F, X))
    for law in laws:
        report.add(law, law not in first, first.get(law, ()))
    return report

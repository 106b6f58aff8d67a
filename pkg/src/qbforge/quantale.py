"""The quantale U(A) of upper sets of a finite quantum B-algebra.

Upper sets are plain ``int`` bitmasks over the carrier (bit ``i`` is element
``i``).  Single operations never enumerate U(A); law suites go through a
:class:`QuantaleView`, which materializes U(A) and its operation tables as
index arrays.
"""

from __future__ import annotations

import os
from functools import cached_property
from typing import Callable, Iterable, Iterator

import numpy as np

from .algebra import ClassReport, FiniteAlgebra, _vars, members
from .errors import CapExceeded

DEFAULT_CAP = 1 << 16
INV_RES_MAX_N = 16


def default_cap() -> int:
    """Enumeration cap for U(A), overridable through ``QBFORGE_CAP``."""
    raw = os.environ.get("QBFORGE_CAP")
    return int(raw) if raw else DEFAULT_CAP


def upper_closure(A: FiniteAlgebra, elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= A.up[x]
    return m


def up(A: FiniteAlgebra, x: int) -> int:
    return A.up[x]


def is_upper(A: FiniteAlgebra, X: int) -> bool:
    return all(A.up[x] & ~X == 0 for x in members(X))


def _preimages(A: FiniteAlgebra) -> tuple:
    # pre[y][t]: mask of a with y→a = t
    cached = A.__dict__.get("_qb_preimages")
    if cached is None:
        to, _, _ = A.rows
        pre = [[0] * A.n for _ in range(A.n)]
        for y in range(A.n):
            for a in range(A.n):
                pre[y][to[y][a]] |= 1 << a
        cached = A.__dict__["_qb_preimages"] = tuple(map(tuple, pre))
    return cached


def umul(A: FiniteAlgebra, X: int, Y: int) -> int:
    """X·Y = {a | y→a ∈ X for some y ∈ Y}."""
    pre = _preimages(A)
    out = 0
    xs = members(X)
    for y in members(Y):
        row = pre[y]
        for t in xs:
            out |= row[t]
    return out


def umul_product(A: FiniteAlgebra, X: int, Y: int) -> int:
    """X·Y = {a | x·y ≤ a for some x ∈ X, y ∈ Y}; needs a product table."""
    _, _, mul = A.rows
    out = 0
    ys = members(Y)
    for x in members(X):
        for y in ys:
            out |= A.up[mul[x][y]]
    return out


def ures_r(A: FiniteAlgebra, Y: int, Z: int) -> int:
    """Y→Z = {x | for all y ∈ Y, z: x ≤ y→z implies z ∈ Z}."""
    to, _, _ = A.rows
    outside = members(A.full & ~Z)
    bad = 0
    for y in members(Y):
        for z in outside:
            bad |= A.down[to[y][z]]
    return A.full & ~bad


def ures_l(A: FiniteAlgebra, X: int, Z: int) -> int:
    """X⇝Z = {y | for all x ∈ X, z: y ≤ x⇝z implies z ∈ Z}."""
    _, lto, _ = A.rows
    outside = members(A.full & ~Z)
    bad = 0
    for x in members(X):
        for z in outside:
            bad |= A.down[lto[x][z]]
    return A.full & ~bad


def enumerate_upper_sets(A: FiniteAlgebra, cap: int | None = None) -> Iterator[int]:
    """Every upper set once, ascending by (popcount, bitmask)."""
    yield from list_upper_sets(A, cap)


def list_upper_sets(A: FiniteAlgebra, cap: int | None = None) -> list[int]:
    cap = default_cap() if cap is None else cap
    cached = A.__dict__.setdefault("_upper_sets", {})
    if "all" in cached:
        if len(cached["all"]) > cap:
            raise CapExceeded(cap, {"upper_sets": len(cached["all"])})
        return cached["all"]
    # tops first, so inclusion of x only needs the strict upper set of x
    order = sorted(range(A.n), key=lambda x: -int(A.leq[:, x].sum()))
    strict_up = [A.up[x] & ~(1 << x) for x in range(A.n)]
    found: list[int] = []

    def dfs(k: int, cur: int) -> None:
        if k == len(order):
            found.append(cur)
            if len(found) > cap:
                raise CapExceeded(cap, {"upper_sets_seen": len(found)})
            return
        x = order[k]
        dfs(k + 1, cur)
        if strict_up[x] & ~cur == 0:
            dfs(k + 1, cur | (1 << x))

    dfs(0, 0)
    found.sort(key=lambda m: (bin(m).count("1"), m))
    cached["all"] = found
    return found


def inv_res(A: FiniteAlgebra, a: int, b: int, side: str = "left") -> int:
    """Inverse residuals by direct scan of U(A).

    ``side="left"`` gives ⋀{X | X·a ⊇ b}; ``side="right"`` gives
    ⋀{X | a·X ⊇ b}.  The empty meet is the top A.
    """
    if A.n > INV_RES_MAX_N:
        raise CapExceeded(INV_RES_MAX_N, {"n": A.n})
    out = A.full
    for X in list_upper_sets(A, cap=1 << INV_RES_MAX_N):
        prod = umul(A, X, a) if side == "left" else umul(A, a, X)
        if prod & b == b:
            out &= X
    return out


class QuantaleView:
    """U(A) materialized: upper sets plus index tables for ·, →, ⇝, ∪, ∩, ⊆."""

    def __init__(self, A: FiniteAlgebra, cap: int | None = None):
        self.A = A
        self.sets = list_upper_sets(A, cap)
        self.k = len(self.sets)
        self.index = {m: i for i, m in enumerate(self.sets)}
        self.empty = self.index[0]
        self.top = self.index[A.full]
        self.non_upper: list[tuple] = []

    def _table(self, op: Callable[[FiniteAlgebra, int, int], int], name: str) -> np.ndarray:
        k, sets = self.k, self.sets
        out = np.empty((k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                m = op(self.A, sets[i], sets[j])
                idx = self.index.get(m)
                if idx is None:
                    self.non_upper.append((name, sets[i], sets[j]))
                    idx = self.empty
                out[i, j] = idx
        return out

    @cached_property
    def mul(self) -> np.ndarray:
        return self._table(umul, "mul")

    @cached_property
    def res_r(self) -> np.ndarray:
        """res_r[i, j] = sets[i] → sets[j]."""
        return self._table(ures_r, "res_r")

    @cached_property
    def res_l(self) -> np.ndarray:
        """res_l[i, j] = sets[i] ⇝ sets[j]."""
        return self._table(ures_l, "res_l")

    @cached_property
    def union(self) -> np.ndarray:
        return self._table(lambda A, x, y: x | y, "union")

    @cached_property
    def inter(self) -> np.ndarray:
        return self._table(lambda A, x, y: x & y, "inter")

    @cached_property
    def subset(self) -> np.ndarray:
        s = np.array(self.sets, dtype=object)
        return (s[:, None] & ~s[None, :]) == 0

    def masks(self, idx) -> tuple[int, ...]:
        return tuple(self.sets[i] for i in idx)

    # ---- structural predicates ----------------------------------------

    def supercompact_flags(self) -> np.ndarray:
        """c ≠ ∅ and c ⊆ X ∪ Y implies c ⊆ X or c ⊆ Y (binary reduction of arbitrary joins)."""
        S, U = self.subset, self.union
        k = self.k
        flags = np.zeros(k, dtype=bool)
        for c in range(k):
            if c == self.empty:
                continue
            covered = S[c][U]
            split = S[c][:, None] | S[c][None, :]
            flags[c] = bool((~covered | split).all())
        return flags

    def balanced_flags(self) -> np.ndarray:
        """c ≠ ∅ and c·(X∩Y) = c·X ∩ c·Y, (X∩Y)·c = X·c ∩ Y·c, c·A = A = A·c."""
        M, I = self.mul, self.inter
        k = self.k
        flags = np.zeros(k, dtype=bool)
        for c in range(k):
            if c == self.empty:
                continue
            left = M[c][I] == I[M[c][:, None], M[c][None, :]]
            right = M[:, c][I] == I[M[:, c][:, None], M[:, c][None, :]]
            nullary = M[c, self.top] == self.top and M[self.top, c] == self.top
            flags[c] = bool(left.all() and right.all() and nullary)
        return flags


def _report_masks(report: ClassReport, view: QuantaleView, start: int = 0) -> ClassReport:
    for i in range(start, len(report.violations)):
        v = report.violations[i]
        report.violations[i] = v._replace(witness=view.masks(v.witness))
    return report


def check_quantale_laws(A: FiniteAlgebra, cap: int | None = None) -> ClassReport:
    """Associativity, join distributivity, residual identities and adjunction on U(A).

    Arbitrary joins are checked through their binary and empty cases.
    """
    view = QuantaleView(A, cap)
    M, RR, RL, U, I, S = view.mul, view.res_r, view.res_l, view.union, view.inter, view.subset
    e, top = view.empty, view.top
    report = ClassReport("quantale")
    report.add("q.upper_closed", not view.non_upper,
               view.non_upper[0] if view.non_upper else ())
    x, y, z = _vars(view.k, 3)
    start = len(report.violations)
    report.add("q.assoc", M[M[x, y], z] == M[x, M[y, z]])
    report.add("q.dist_left", M[x, U[y, z]] == U[M[x, y], M[x, z]])
    report.add("q.dist_right", M[U[x, y], z] == U[M[x, z], M[y, z]])
    x1, = _vars(view.k, 1)
    report.add("q.zero", (M[x1, e] == e) & (M[e, x1] == e))
    # b→c is right adjoint to -·b and a⇝c to a·-
    report.add("q.mixed", RL[x, RR[y, z]] == RR[y, RL[x, z]])
    report.add("q.to_curry", RR[x, RR[y, z]] == RR[M[x, y], z])
    report.add("q.lto_curry", RL[y, RL[x, z]] == RL[M[x, y], z])
    report.add("q.join_to", RR[U[x, y], z] == I[RR[x, z], RR[y, z]])
    report.add("q.join_lto", RL[U[x, y], z] == I[RL[x, z], RL[y, z]])
    report.add("q.empty_join", (RR[e, x1] == top) & (RL[e, x1] == top))
    lhs = S[M[x, y], z]
    report.add("q.adjunction", (lhs == S[x, RR[y, z]]) & (lhs == S[y, RL[x, z]]))
    return _report_masks(report, view, start)


def is_supercompact(A: FiniteAlgebra, c: int, cap: int | None = None) -> bool:
    view = QuantaleView(A, cap)
    return bool(view.supercompact_flags()[view.index[c]])


def is_balanced(A: FiniteAlgebra, c: int, cap: int | None = None) -> bool:
    view = QuantaleView(A, cap)
    return bool(view.balanced_flags()[view.index[c]])


def check_conucleus(A: FiniteAlgebra, g: Callable[[int], int],
                    cap: int | None = None) -> ClassReport:
    """Monotone, deflationary, idempotent and g(X)·g(Y) ⊆ g(X·Y) over all of U(A)."""
    view = QuantaleView(A, cap)
    report = ClassReport("conucleus")
    images = [g(X) for X in view.sets]
    bad = [X for X, gX in zip(view.sets, images) if gX not in view.index]
    report.add("g.upper", not bad, tuple(bad[:1]))
    if bad:
        return report
    G = np.array([view.index[m] for m in images])
    S, M = view.subset, view.mul
    x, y = _vars(view.k, 2)
    start = len(report.violations)
    report.add("g.monotone", ~S[x, y] | S[G[x], G[y]])
    report.add("g.deflationary", S[G, np.arange(view.k)])
    report.add("g.idempotent", G[G] == G)
    report.add("g.multiplicative", S[M[G[x], G[y]], G[M[x, y]]])
    return _report_masks(report, view, start)


def fixed_points(A: FiniteAlgebra, g: Callable[[int], int], cap: int | None = None) -> list[int]:
    return [X for X in list_upper_sets(A, cap) if g(X) == X]


def check_subquantale(A: FiniteAlgebra, family: Iterable[int]) -> ClassReport:
    """Closed under all unions (empty one included) and under ·."""
    fam = sorted(set(family), key=lambda m: (bin(m).count("1"), m))
    members_ = set(fam)
    report = ClassReport("subquantale")
    report.add("sq.empty_join", 0 in members_)
    pairs = [(X, Y) for X in fam for Y in fam]
    bad_u = next(((X, Y) for X, Y in pairs if X | Y not in members_), None)
    report.add("sq.union", bad_u is None, bad_u or ())
    bad_m = next(((X, Y) for X, Y in pairs if umul(A, X, Y) not in members_), None)
    report.add("sq.mul", bad_m is None, bad_m or ())
    return report

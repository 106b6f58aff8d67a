"""Finite ordered algebras with two implications and membership tests.

A :class:`FiniteAlgebra` stores a partial order together with total
operation tables over element indices ``0..n-1``.  Every class test is a
set of *laws*; a law is a function returning a boolean array indexed by the
law's free variables, ``True`` where the law holds.  Violations are reported
at the lexicographically smallest failing tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    InputError,
    JoinMissing,
    MultipleUnits,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
)

Law = Callable[["FiniteAlgebra"], np.ndarray]


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Poset:
    leq: np.ndarray

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    def key(self) -> bytes:
        return np.packbits(self.leq).tobytes()


def validate_poset(leq) -> Poset:
    """Return a :class:`Poset` or raise naming the first failed order law."""
    m = np.array(leq, dtype=bool)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"order relation must be square, got shape {m.shape}")
    diag = np.flatnonzero(~m.diagonal())
    if diag.size:
        raise NotReflexive(int(diag[0]))
    both = m & m.T
    np.fill_diagonal(both, False)
    bad = np.argwhere(both)
    if bad.size:
        raise NotAntisymmetric(*map(int, bad[0]))
    bad = np.argwhere(m[:, :, None] & m[None, :, :] & ~m[:, None, :])
    if bad.size:
        raise NotTransitive(*map(int, bad[0]))
    return Poset(_readonly(m))


def _table(values, n: int, what: str) -> np.ndarray:
    t = np.array(values, dtype=np.int64)
    if t.shape != (n, n):
        raise InputError(f"{what} table must be {n}x{n}, got {t.shape}")
    if t.size and (t.min() < 0 or t.max() >= n):
        raise InputError(f"{what} table has entries outside 0..{n - 1}")
    return _readonly(t)


class FiniteAlgebra:
    """A poset with implication tables ``to`` (→), ``lto`` (⇝) and optional ``mul``.

    ``unit`` and ``bottom`` may be given; they are always inferred and a
    supplied value that disagrees with inference is rejected.
    """

    def __init__(
        self,
        leq,
        to,
        lto,
        mul=None,
        unit: int | None = None,
        bottom: int | None = None,
        labels: Sequence[str] | None = None,
        name: str = "",
    ):
        self.poset = leq if isinstance(leq, Poset) else validate_poset(leq)
        n = self.poset.n
        self.n = n
        self.leq = self.poset.leq
        self.to = _table(to, n, "to")
        self.lto = _table(lto, n, "lto")
        self.mul = None if mul is None else _table(mul, n, "mul")
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(str(s) for s in labels)
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InputError("labels must be unique and one per element")
        self.name = name
        if unit is not None and check_unital(self) != unit:
            raise InputError(f"declared unit {self.labels[unit]!r} is not the unit")
        if bottom is not None and self.bottom != bottom:
            raise InputError(f"declared bottom {self.labels[bottom]!r} is not the least element")

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name or 'unnamed'}, n={self.n})"

    # ---- derived order data -------------------------------------------

    @cached_property
    def unit(self) -> int | None:
        return check_unital(self)

    @cached_property
    def bottom(self) -> int | None:
        rows = np.flatnonzero(self.leq.all(axis=1))
        return int(rows[0]) if rows.size else None

    @cached_property
    def top(self) -> int | None:
        cols = np.flatnonzero(self.leq.all(axis=0))
        return int(cols[0]) if cols.size else None

    @cached_property
    def up(self) -> tuple[int, ...]:
        """Bitmask of the principal upper set of each element."""
        return tuple(mask_of(np.flatnonzero(row)) for row in self.leq)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(mask_of(np.flatnonzero(col)) for col in self.leq.T)

    @cached_property
    def rows(self) -> tuple[tuple, tuple, tuple | None]:
        """Plain-list copies of (to, lto, mul) for scalar hot loops."""
        mul = None if self.mul is None else tuple(map(tuple, self.mul.tolist()))
        return tuple(map(tuple, self.to.tolist())), tuple(map(tuple, self.lto.tolist())), mul

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    def _bound_table(self, upper: bool) -> np.ndarray:
        n = self.n
        out = np.full((n, n), -1, dtype=np.int64)
        rel = self.leq if upper else self.leq.T
        for x in range(n):
            for y in range(n):
                common = np.flatnonzero(rel[x] & rel[y])
                # least common upper bound (resp. greatest lower bound)
                best = [c for c in common if rel[c][common].all()]
                if best:
                    out[x, y] = best[0]
        return _readonly(out)

    @cached_property
    def join_table(self) -> np.ndarray:
        """Join of each pair, -1 where no join exists."""
        return self._bound_table(True)

    @cached_property
    def meet_table(self) -> np.ndarray:
        return self._bound_table(False)

    def join(self, x: int, y: int) -> int:
        j = int(self.join_table[x, y])
        if j < 0:
            raise JoinMissing(self.labels[x], self.labels[y])
        return j

    def meet(self, x: int, y: int) -> int:
        m = int(self.meet_table[x, y])
        if m < 0:
            raise InputError(f"no meet for ({self.labels[x]}, {self.labels[y]})")
        return m

    @cached_property
    def coprime(self) -> np.ndarray:
        """``coprime[x, y]`` iff the unit is the only common upper bound of x and y."""
        n = self.n
        if self.unit is None:
            return _readonly(np.zeros((n, n), dtype=bool))
        only_unit = np.zeros(n, dtype=bool)
        only_unit[self.unit] = True
        common = self.leq[:, None, :] & self.leq[None, :, :]
        return _readonly((common == only_unit).all(axis=2))

    # ---- elements and subsets -----------------------------------------

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(s) for s in labels)

    def label_set(self, mask: int) -> list[str]:
        return [self.labels[i] for i in members(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.label_set(mask)) + "}"

    def bits(self, mask: int) -> np.ndarray:
        return np.array([(mask >> i) & 1 for i in range(self.n)], dtype=bool)

    # ---- derived algebras ---------------------------------------------

    def replace(self, **changes) -> "FiniteAlgebra":
        """Copy with some tables replaced; unit and bottom are re-inferred."""
        args = dict(
            leq=self.poset, to=self.to, lto=self.lto, mul=self.mul,
            labels=self.labels, name=self.name,
        )
        args.update(changes)
        return FiniteAlgebra(**args)

    def relabeled(self, perm: Sequence[int]) -> "FiniteAlgebra":
        """Isomorphic copy in which old element ``x`` becomes ``perm[x]``."""
        p = np.asarray(perm)
        inv = np.argsort(p)
        def move(t):
            return None if t is None else p[t[np.ix_(inv, inv)]]
        labels = [self.labels[i] for i in inv]
        return FiniteAlgebra(
            self.leq[np.ix_(inv, inv)], move(self.to), move(self.lto), move(self.mul),
            labels=labels, name=self.name,
        )

    @cached_property
    def commutative(self) -> bool:
        if self.mul is not None:
            return bool((self.mul == self.mul.T).all())
        return bool((self.to == self.lto).all())

    @cached_property
    def is_residuated(self) -> bool:
        return self.mul is not None and check_residuated(self).holds


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


# ---- reports --------------------------------------------------------------


class Violation(NamedTuple):
    law_id: str
    witness: tuple


@dataclass
class ClassReport:
    class_name: str
    violations: list[Violation] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.holds

    def failed(self, law_id: str) -> bool:
        return any(v.law_id == law_id for v in self.violations)

    def add(self, law_id: str, ok: bool | np.ndarray, witness: tuple = ()) -> None:
        """Record a law; for arrays the first failing index becomes the witness."""
        self.checked.append(law_id)
        if isinstance(ok, np.ndarray):
            bad = np.argwhere(~ok)
            if bad.size or (ok.ndim == 0 and not ok):
                w = tuple(int(i) for i in bad[0]) if bad.size else ()
                self.violations.append(Violation(law_id, w))
        elif not ok:
            self.violations.append(Violation(law_id, tuple(witness)))

    def merge(self, other: "ClassReport") -> "ClassReport":
        self.checked.extend(other.checked)
        self.violations.extend(other.violations)
        return self

    def to_dict(self, A: FiniteAlgebra | None = None) -> dict:
        def show(w):
            if A is None:
                return list(w)
            return [A.labels[i] if isinstance(i, (int, np.integer)) and 0 <= i < A.n else i
                    for i in w]
        return {
            "class": self.class_name,
            "holds": self.holds,
            "laws": {law: not self.failed(law) for law in self.checked},
            "violations": [{"law": v.law_id, "witness": show(v.witness)}
                           for v in self.violations],
        }


def run_laws(class_name: str, A: FiniteAlgebra, laws: dict[str, Law]) -> ClassReport:
    report = ClassReport(class_name)
    for law_id, law in laws.items():
        report.add(law_id, np.asarray(law(A)))
    return report


def _vars(n: int, arity: int):
    """Broadcastable index arrays x, y, z, ... for an ``arity``-ary scan."""
    out = []
    for k in range(arity):
        shape = [1] * arity
        shape[k] = n
        out.append(np.arange(n).reshape(shape))
    return out


# ---- quantum B-algebras ----------------------------------------------------


def _qb_to_chain(A):
    T, leq = A.to, A.leq
    x, y, z = _vars(A.n, 3)
    return leq[T[y, z], T[T[x, y], T[x, z]]]


def _qb_lto_chain(A):
    L, leq = A.lto, A.leq
    x, y, z = _vars(A.n, 3)
    return leq[L[y, z], L[L[x, y], L[x, z]]]


def _qb_monotone(A):
    T, leq = A.to, A.leq
    x, y, z = _vars(A.n, 3)
    return ~leq[y, z] | leq[T[x, y], T[x, z]]


def _qb_exchange(A):
    T, L, leq = A.to, A.lto, A.leq
    x, y, z = _vars(A.n, 3)
    return leq[x, T[y, z]] == leq[y, L[x, z]]


QB_LAWS: dict[str, Law] = {
    "qb.to_chain": _qb_to_chain,
    "qb.lto_chain": _qb_lto_chain,
    "qb.monotone": _qb_monotone,
    "qb.exchange": _qb_exchange,
}


def check_quantum_b(A: FiniteAlgebra) -> ClassReport:
    return run_laws("quantum-b", A, QB_LAWS)


def check_unital(A: FiniteAlgebra) -> int | None:
    """The element u with u→x = u⇝x = x for every x, if any."""
    ident = np.arange(A.n)
    cands = [u for u in range(A.n)
             if (A.to[u] == ident).all() and (A.lto[u] == ident).all()]
    if len(cands) > 1:
        raise MultipleUnits(A.labels[cands[0]], A.labels[cands[1]])
    return cands[0] if cands else None


def check_integral(A: FiniteAlgebra) -> bool:
    return A.unit is not None and A.unit == A.top


# ---- residuated posets -----------------------------------------------------


def _res_to(A):
    M, T, leq = A.mul, A.to, A.leq
    x, y, z = _vars(A.n, 3)
    return leq[M[x, y], z] == leq[x, T[y, z]]


def _res_lto(A):
    M, L, leq = A.mul, A.lto, A.leq
    x, y, z = _vars(A.n, 3)
    return leq[M[x, y], z] == leq[y, L[x, z]]


def _res_assoc(A):
    M = A.mul
    x, y, z = _vars(A.n, 3)
    return M[M[x, y], z] == M[x, M[y, z]]


def _res_monotone(A):
    M, leq = A.mul, A.leq
    x, y, z = _vars(A.n, 3)
    return ~leq[x, y] | (leq[M[x, z], M[y, z]] & leq[M[z, x], M[z, y]])


RESIDUATED_LAWS: dict[str, Law] = {
    "res.to": _res_to,
    "res.lto": _res_lto,
    "res.assoc": _res_assoc,
    "res.monotone": _res_monotone,
}


def check_residuated(A: FiniteAlgebra) -> ClassReport:
    if A.mul is None:
        report = ClassReport("residuated")
        report.add("res.mul_present", False)
        return report
    return run_laws("residuated", A, RESIDUATED_LAWS)


def check_two_sided(A: FiniteAlgebra) -> bool:
    if A.mul is None:
        return False
    x, y = _vars(A.n, 2)
    return bool((A.leq[A.mul[x, y], x] & A.leq[A.mul[x, y], y]).all())


def check_join_semilattice(A: FiniteAlgebra) -> bool:
    return bool((A.join_table >= 0).all())


# ---- pseudo-hoops ----------------------------------------------------------


def _ph_unit_law(A):
    u = A.unit
    x, = _vars(A.n, 1)
    return (A.mul[x, u] == x) & (A.mul[u, x] == x)


def _ph_self_implication(A):
    u = A.unit
    x, = _vars(A.n, 1)
    return (A.to[x, x] == u) & (A.lto[x, x] == u)


def _ph_curry_to(A):
    M, T = A.mul, A.to
    x, y, z = _vars(A.n, 3)
    return T[M[x, y], z] == T[x, T[y, z]]


def _ph_curry_lto(A):
    M, L = A.mul, A.lto
    x, y, z = _vars(A.n, 3)
    return L[M[x, y], z] == L[y, L[x, z]]


def _ph_divisibility(A):
    M, T, L = A.mul, A.to, A.lto
    x, y = _vars(A.n, 2)
    a = M[T[x, y], x]
    return (a == M[T[y, x], y]) & (a == M[x, L[x, y]]) & (a == M[y, L[y, x]])


def _ph_order(A):
    x, y = _vars(A.n, 2)
    return A.leq[x, y] == (A.to[x, y] == A.unit)


def _ph_meet(A):
    M, T, L, W = A.mul, A.to, A.lto, A.meet_table
    x, y = _vars(A.n, 2)
    return (W[x, y] == M[T[x, y], x]) & (W[x, y] == M[x, L[x, y]])


PSEUDO_HOOP_LAWS: dict[str, Law] = {
    "ph.i": _ph_unit_law,
    "ph.ii": _ph_self_implication,
    "ph.iii": _ph_curry_to,
    "ph.iv": _ph_curry_lto,
    "ph.v": _ph_divisibility,
    "ph.order": _ph_order,
    "ph.meet": _ph_meet,
}


def check_pseudo_hoop(A: FiniteAlgebra) -> ClassReport:
    if A.mul is None or A.unit is None:
        report = ClassReport("pseudo-hoop")
        report.add("ph.signature", False)
        return report
    return run_laws("pseudo-hoop", A, PSEUDO_HOOP_LAWS)


def _prelinear_arrays(A):
    T, L, C = A.to, A.lto, A.coprime
    x, y = _vars(A.n, 2)
    return C[T[x, y], T[y, x]], C[L[x, y], L[y, x]]


def check_extras(A: FiniteAlgebra) -> ClassReport:
    """Bounded, prelinearity, cancellative, pseudo BL and pseudo MV verdicts.

    Each property is one law id; ``report.failed(prop)`` gives its verdict.
    """
    report = ClassReport("extras")
    report.add("bounded", A.bottom is not None)
    pre_to, pre_lto = _prelinear_arrays(A)
    prelinear = pre_to & pre_lto
    report.add("prelinearity", prelinear)
    M = A.mul
    x, y, z = _vars(A.n, 3)
    cancel = (y == z) | ((M[x, y] != M[x, z]) & (M[y, x] != M[z, x]))
    report.add("cancellative", cancel)

    lattice = (A.join_table >= 0) & (A.meet_table >= 0)
    if A.bottom is None:
        report.add("pseudo-bl", False)
        report.add("pseudo-mv", False)
        return report
    report.add("pseudo-bl", lattice & prelinear)
    bl = not report.failed("pseudo-bl")
    zero = A.bottom
    xs = np.arange(A.n)
    minus = A.to[xs, zero]
    tilde = A.lto[xs, zero]
    involutive = (A.lto[minus, zero] == xs) & (A.to[tilde, zero] == xs)
    if bl:
        report.add("pseudo-mv", involutive)
    else:
        report.add("pseudo-mv", False, report.violations[-1].witness)
    return report


@dataclass(frozen=True)
class MtlFlags:
    to_mtl: bool
    lto_mtl: bool
    to_witness: tuple | None = None
    lto_witness: tuple | None = None

    @property
    def pseudo_mtl(self) -> bool:
        return self.to_mtl and self.lto_mtl


def check_mtl(A: FiniteAlgebra) -> MtlFlags:
    """→-MTL: (x→y)∨(y→x) = 1 for all x, y; ⇝-MTL likewise."""
    pre_to, pre_lto = _prelinear_arrays(A)
    def first_bad(ok):
        bad = np.argwhere(~ok)
        return tuple(int(i) for i in bad[0]) if bad.size else None
    wt, wl = first_bad(pre_to), first_bad(pre_lto)
    return MtlFlags(wt is None, wl is None, wt, wl)


def is_integral_residuated_vsl(A: FiniteAlgebra) -> bool:
    """Integral residuated ∨-semilattice: the standing hypothesis of the prime filter results."""
    return (check_quantum_b(A).holds and check_integral(A) and A.is_residuated
            and check_join_semilattice(A))

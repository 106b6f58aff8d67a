"""Exhaustive generation of small algebras and counterexample search.

Posets are grown one element at a time; operation tables are filled by
backtracking over the implication table only.  In a quantum B-algebra the
second implication and (when it exists) the residuated product are
determined by ``→``:

    x ⇝ z = max{y | x ≤ y → z}        x · y = min{z | x ≤ y → z}

Pruning rules for the integral case (all consequences of the axioms):
``x→y = 1`` iff ``x ≤ y``; ``1→y = y``; ``y ≤ x→y``; ``→`` is antitone in
its first and monotone in its second argument.  Every emitted algebra passes
the full class check; the pruning only skips tables that would fail it.
"""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Poset,
    check_extras,
    check_integral,
    check_join_semilattice,
    check_mtl,
    check_pseudo_hoop,
    check_quantum_b,
    check_residuated,
    check_two_sided,
)
from .errors import CapExceeded, InputError, MultipleUnits

FULL_SEARCH_CAP = 5
CLASSES = ("qb", "integral-qb", "residuated", "residuated-vsl", "pseudo-hoop", "hoop")
GENERAL_QB_CAP = 3


# ---- posets ------------------------------------------------------------------


def _labeled_posets(n: int) -> list[tuple[tuple[bool, ...], ...]]:
    if n == 0:
        return [()]
    out = []
    for rel in _labeled_posets(n - 1):
        m = n - 1
        for dmask in range(1 << m):
            down = [i for i in range(m) if dmask >> i & 1]
            # elements below the new one form a down-set
            if any(rel[j][i] and not dmask >> j & 1 for i in down for j in range(m)):
                continue
            for umask in range(1 << m):
                if umask & dmask:
                    continue
                ups = [i for i in range(m) if umask >> i & 1]
                if any(rel[i][j] and not umask >> j & 1 for i in ups for j in range(m)):
                    continue
                if any(not rel[d][u] for d in down for u in ups):
                    continue
                rows = [list(r) + [bool(dmask >> i & 1)] for i, r in enumerate(rel)]
                rows.append([bool(umask >> j & 1) for j in range(m)] + [True])
                out.append(tuple(tuple(r) for r in rows))
    return out


def _signature_perms(leq: np.ndarray) -> Iterator[list[int]]:
    """Relabelings sorting elements by (|down|, |up|); ties are permuted."""
    n = leq.shape[0]
    sig = [(int(leq[:, x].sum()), -int(leq[x].sum())) for x in range(n)]
    groups = [list(g) for _, g in itertools.groupby(sorted(range(n), key=lambda x: sig[x]),
                                                    key=lambda x: sig[x])]
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [x for grp in choice for x in grp]
        perm = [0] * n
        for new, old in enumerate(order):
            perm[old] = new
        yield perm


def canonical_poset(leq) -> tuple[bytes, list[int]]:
    """Canonical key and the relabeling that realizes it (a natural labeling)."""
    leq = np.asarray(leq, dtype=bool)
    best = None
    for perm in _signature_perms(leq):
        inv = np.argsort(perm)
        key = np.packbits(leq[np.ix_(inv, inv)]).tobytes()
        if best is None or key < best[0]:
            best = (key, perm)
    return best


def enumerate_posets(n: int, dedup: bool = False) -> Iterator[Poset]:
    """All partial orders on n labeled elements, or one per isomorphism class."""
    if n > FULL_SEARCH_CAP:
        raise CapExceeded(FULL_SEARCH_CAP, {"n": n})
    if not dedup:
        for rel in _labeled_posets(n):
            yield Poset(np.array(rel, dtype=bool).reshape(n, n))
        return
    yield from _iso_posets(n)


@lru_cache(maxsize=None)
def _iso_posets(n: int) -> tuple[Poset, ...]:
    seen = {}
    for rel in _labeled_posets(n):
        leq = np.array(rel, dtype=bool).reshape(n, n)
        key, perm = canonical_poset(leq)
        if key not in seen:
            inv = np.argsort(perm)
            canon = leq[np.ix_(inv, inv)]
            canon.setflags(write=False)
            seen[key] = Poset(canon)
    return tuple(seen[k] for k in sorted(seen))


def automorphisms(leq: np.ndarray) -> list[list[int]]:
    n = leq.shape[0]
    out = []
    for perm in _signature_perms(leq):
        inv = np.argsort(perm)
        if (leq[np.ix_(inv, inv)] == leq).all():
            out.append(perm)
    return out or [list(range(n))]


# ---- operation tables --------------------------------------------------------


def derive_lto(leq: np.ndarray, to) -> list[list[int]] | None:
    """x⇝z as the greatest y with x ≤ y→z, or None if some such set has no maximum."""
    n = leq.shape[0]
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for z in range(n):
            ys = [y for y in range(n) if leq[x, to[y][z]]]
            top = [y for y in ys if all(leq[w, y] for w in ys)]
            if not top:
                return None
            out[x][z] = top[0]
    return out


def derive_mul(leq: np.ndarray, to) -> list[list[int]] | None:
    """x·y as the least z with x ≤ y→z, or None if it does not exist everywhere."""
    n = leq.shape[0]
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            zs = [z for z in range(n) if leq[x, to[y][z]]]
            low = [z for z in zs if all(leq[z, w] for w in zs)]
            if not low:
                return None
            out[x][y] = low[0]
    return out


def _integral_to_tables(leq: np.ndarray) -> Iterator[list[list[int]]]:
    n = leq.shape[0]
    t = n - 1
    L = leq.tolist()
    to = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if L[x][y]:
                to[x][y] = t
            elif x == t:
                to[x][y] = y
    cells = [(x, y) for x in range(n) for y in range(n) if to[x][y] is None]
    domains = {(x, y): [v for v in range(n) if L[y][v] and v != t] for x, y in cells}

    def consistent(x, y, v):
        for w in range(n):
            o = to[x][w]
            if o is not None and w != y:
                if L[w][y] and not L[o][v]:
                    return False
                if L[y][w] and not L[v][o]:
                    return False
            o = to[w][y]
            if o is not None and w != x:
                if L[w][x] and not L[v][o]:
                    return False
                if L[x][w] and not L[o][v]:
                    return False
        return True

    def fill(k):
        if k == len(cells):
            yield [row[:] for row in to]
            return
        x, y = cells[k]
        for v in domains[(x, y)]:
            if consistent(x, y, v):
                to[x][y] = v
                yield from fill(k + 1)
        to[x][y] = None

    yield from fill(0)


def _general_to_tables(leq: np.ndarray) -> Iterator[list[list[int]]]:
    """All → tables monotone in the second argument (an axiom of every QB algebra)."""
    n = leq.shape[0]
    L = leq.tolist()
    to = [[None] * n for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n)]

    def fill(k):
        if k == len(cells):
            yield [row[:] for row in to]
            return
        x, y = cells[k]
        for v in range(n):
            ok = all(to[x][w] is None or
                     ((not L[w][y] or L[to[x][w]][v]) and (not L[y][w] or L[v][to[x][w]]))
                     for w in range(n) if w != y)
            if ok:
                to[x][y] = v
                yield from fill(k + 1)
        to[x][y] = None

    yield from fill(0)


def _labels(leq: np.ndarray) -> list[str]:
    n = leq.shape[0]
    A_top = [x for x in range(n) if leq[:, x].all()]
    A_bot = [x for x in range(n) if leq[x, :].all()]
    labels, k = [], 0
    for x in range(n):
        if A_top and x == A_top[0]:
            labels.append("1")
        elif A_bot and x == A_bot[0] and n > 1:
            labels.append("0")
        else:
            labels.append(chr(ord("a") + k))
            k += 1
    return labels


def _assemble(poset: Poset, to, name: str = "", integral: bool = True) -> FiniteAlgebra | None:
    """Build and fully check a QB algebra from its → table; attach · when residuated."""
    leq = poset.leq
    lto = derive_lto(leq, to)
    if lto is None:
        return None
    labels = _labels(leq)
    A = FiniteAlgebra(poset, to, lto, labels=labels, name=name)
    if not check_quantum_b(A).holds:
        return None
    try:
        unit = A.unit
    except MultipleUnits:
        return None
    if integral and not (unit is not None and unit == A.top):
        return None
    mul = derive_mul(leq, to)
    if mul is not None:
        B = A.replace(mul=mul)
        if check_residuated(B).holds:
            return B
    return A


def _canonical_tables(A: FiniteAlgebra, auts: list[list[int]]) -> tuple:
    best = None
    for perm in auts:
        p = np.asarray(perm)
        inv = np.argsort(p)
        key = tuple(p[A.to[np.ix_(inv, inv)]].ravel().tolist())
        if best is None or key < best:
            best = key
    return best


# ---- search specification ----------------------------------------------------


@dataclass(frozen=True)
class SearchSpec:
    max_size: int = 4
    target_class: str = "integral-qb"
    predicate: str = "true"
    limit: int | None = None
    dedup: bool = True
    min_size: int = 1
    hard_cap: int = FULL_SEARCH_CAP


def in_class(A: FiniteAlgebra, cls: str) -> bool:
    if cls in ("qb", "integral-qb"):
        return True
    if cls == "residuated":
        return A.mul is not None
    if cls == "residuated-vsl":
        return A.mul is not None and check_join_semilattice(A)
    if cls in ("pseudo-hoop", "hoop"):
        if A.mul is None or not check_pseudo_hoop(A).holds:
            return False
        return cls == "pseudo-hoop" or A.commutative
    raise InputError(f"unknown class {cls!r}; choose from {', '.join(CLASSES)}")


def _raw_algebras(n: int, target: str, dedup: bool, pruned: bool = True) -> Iterator[FiniteAlgebra]:
    integral = target != "qb"
    posets = enumerate_posets(n, dedup=dedup)
    count = 0
    for poset in posets:
        leq = poset.leq
        if integral and not leq.all(axis=0).any():
            continue
        if not pruned:
            tables = _unpruned_survivors(poset)
        elif integral and dedup:
            tables = _integral_to_tables(leq)
        elif integral:
            tables = _integral_tables_any_top(leq)
        else:
            tables = _general_to_tables(leq)
        found = []
        for to in tables:
            A = _assemble(poset, to, integral=integral)
            if A is not None and in_class(A, target):
                found.append(A)
        if dedup:
            auts = automorphisms(leq)
            keyed = {}
            for A in found:
                keyed.setdefault(_canonical_tables(A, auts), A)
            found = [keyed[k] for k in sorted(keyed)]
        for A in found:
            count += 1
            A.name = f"{target}:{n}:{count}"
            yield A


def _all_tables(n: int) -> Iterator[list[list[int]]]:
    for flat in itertools.product(range(n), repeat=n * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(n)]


_SURVIVORS: dict[tuple[int, bytes], tuple] = {}


def _unpruned_survivors(poset: Poset) -> tuple:
    """Every → table on the order that passes the full check, no pruning."""
    n = poset.leq.shape[0]
    key = (n, poset.leq.tobytes())
    if key not in _SURVIVORS:
        _SURVIVORS[key] = tuple(to for to in _all_tables(n)
                                if _assemble(poset, to, integral=False) is not None)
    return _SURVIVORS[key]


def _integral_tables_any_top(leq: np.ndarray) -> Iterator[list[list[int]]]:
    """Labeled posets put the top anywhere; relabel to top-last and back."""
    n = leq.shape[0]
    tops = np.flatnonzero(leq.all(axis=0))
    if not tops.size:
        return
    t = int(tops[0])
    order = [x for x in range(n) if x != t] + [t]
    inv = np.argsort(order)
    sub = leq[np.ix_(order, order)]
    for to in _integral_to_tables(sub):
        yield [[order[to[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]


def enumerate_algebras(spec: SearchSpec, pruned: bool = True) -> Iterator[FiniteAlgebra]:
    """All algebras of the target class with min_size ≤ n ≤ max_size.

    With ``dedup`` one representative per isomorphism class is emitted, in a
    fixed order.  ``pruned=False`` scans every → table instead (n ≤ 3).
    """
    if spec.target_class not in CLASSES:
        raise InputError(f"unknown class {spec.target_class!r}; choose from {', '.join(CLASSES)}")
    cap = GENERAL_QB_CAP if spec.target_class == "qb" else spec.hard_cap
    if not pruned:
        cap = min(cap, 3)
    if spec.max_size > cap:
        raise CapExceeded(cap, {"requested": spec.max_size, "class": spec.target_class})
    emitted = 0
    for n in range(spec.min_size, spec.max_size + 1):
        for A in _raw_algebras(n, spec.target_class, spec.dedup, pruned):
            yield A
            emitted += 1
            if spec.limit is not None and emitted >= spec.limit:
                return


@lru_cache(maxsize=None)
def sweep(max_size: int = 4, target_class: str = "integral-qb") -> tuple[FiniteAlgebra, ...]:
    """Deduplicated algebras of sizes 1..max_size, cached per process."""
    return tuple(enumerate_algebras(SearchSpec(max_size=max_size, target_class=target_class)))


def sweep_of(cls: str, max_size: int = 4) -> list[FiniteAlgebra]:
    """Members of ``cls`` inside the integral quantum B-algebra sweep."""
    return [A for A in sweep(max_size) if in_class(A, cls)]


# ---- properties and predicates -----------------------------------------------


def algebra_properties(A: FiniteAlgebra) -> dict:
    """Named facts a search predicate may refer to; undefined facts are None."""
    from .primes import prime_classes

    props: dict = {
        "size": A.n,
        "commutative": A.commutative,
        "integral": check_integral(A),
        "residuated": A.is_residuated,
        "vee_semilattice": check_join_semilattice(A),
        "two_sided": check_two_sided(A),
        "bounded": A.bottom is not None,
    }
    hoop = A.mul is not None and A.unit is not None and check_pseudo_hoop(A).holds
    props["pseudo_hoop"] = hoop
    props["hoop"] = hoop and A.commutative
    for key in ("prelinear", "pseudo_bl", "pseudo_mv", "coprime_ok",
                "to_mtl", "lto_mtl", "pseudo_mtl", "PF", "PF_to", "PF_lto", "PF_vee"):
        props[key] = None
    if hoop:
        from .hoops import coprime_laws

        extras = check_extras(A)
        props["prelinear"] = not extras.failed("prelinearity")
        props["pseudo_bl"] = not extras.failed("pseudo-bl")
        props["pseudo_mv"] = not extras.failed("pseudo-mv")
        props["coprime_ok"] = coprime_laws(A).holds
    if props["integral"] and props["residuated"] and props["vee_semilattice"]:
        flags = check_mtl(A)
        props.update(to_mtl=flags.to_mtl, lto_mtl=flags.lto_mtl, pseudo_mtl=flags.pseudo_mtl)
        props.update(prime_classes(A))
    return props


_ALLOWED = (ast.Expression, ast.BoolOp, ast.And, ast.Or, ast.UnaryOp, ast.Not,
            ast.Compare, ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE,
            ast.Name, ast.Load, ast.Constant)


class _Undefined(Exception):
    pass


def compile_predicate(text: str):
    """Parse a predicate such as ``PF != PF_vee and not pseudo_mtl``."""
    try:
        tree = ast.parse(text.strip() or "true", mode="eval")
    except SyntaxError as exc:
        raise InputError(f"bad predicate {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise InputError(f"unsupported syntax in predicate: {type(node).__name__}")

    def ev(node, env):
        if isinstance(node, ast.Expression):
            return ev(node.body, env)
        if isinstance(node, ast.Constant):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in ("true", "True"):
                return True
            if node.id in ("false", "False"):
                return False
            if node.id not in env:
                raise InputError(f"unknown property {node.id!r}")
            value = env[node.id]
            if value is None:
                raise _Undefined(node.id)
            return value
        if isinstance(node, ast.UnaryOp):
            return not ev(node.operand, env)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v, env) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        left = ev(node.left, env)
        for op, right_node in zip(node.ops, node.comparators):
            right = ev(right_node, env)
            ok = {ast.Eq: left == right, ast.NotEq: left != right}.get(type(op))
            if ok is None:
                ok = {ast.Lt: lambda: left < right, ast.LtE: lambda: left <= right,
                      ast.Gt: lambda: left > right, ast.GtE: lambda: left >= right}[type(op)]()
            if not ok:
                return False
            left = right
        return True

    def predicate(props: dict) -> bool:
        try:
            return bool(ev(tree, props))
        except _Undefined:
            return False

    return predicate


def find_counterexamples(spec: SearchSpec) -> list[tuple[FiniteAlgebra, dict]]:
    """Algebras of the requested class satisfying the predicate, with their properties."""
    pred = compile_predicate(spec.predicate)
    out = []
    inner = SearchSpec(spec.max_size, spec.target_class, "true", None, spec.dedup,
                       spec.min_size, spec.hard_cap)
    for A in enumerate_algebras(inner):
        props = algebra_properties(A)
        if pred(props):
            out.append((A, props))
            if spec.limit is not None and len(out) >= spec.limit:
                break
    return out

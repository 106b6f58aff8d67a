"""Named finite algebras used as fixtures, demos and search seeds.

Names: ``godel:n``, ``lukasiewicz:n``, ``heyting-d5``, ``chain:2``,
``cyclic:n`` (the group Z_n on an antichain, unital but not integral),
``trivial`` and ``prod(e1,e2)`` for componentwise products.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

import numpy as np

from .algebra import (
    FiniteAlgebra,
    check_pseudo_hoop,
    check_quantum_b,
    check_residuated,
)
from .errors import CapExceeded, UnknownName, ValidationFailed

FAMILY_CAP = 7
CATALOG_NAMES = ("godel:n", "lukasiewicz:n", "heyting-d5", "chain:2", "cyclic:n",
                 "trivial", "prod(e1,e2)")


def _chain_leq(n):
    i = np.arange(n)
    return i[:, None] <= i[None, :]


def _letters(n):
    """Labels 0, a, b, ..., 1 for an n-element chain."""
    if n == 1:
        return ["1"]
    mids = [chr(ord("a") + k) for k in range(n - 2)]
    return ["0", *mids, "1"]


def godel(n: int) -> FiniteAlgebra:
    if n < 1:
        raise UnknownName(f"godel:{n}")
    leq = _chain_leq(n)
    i = np.arange(n)
    mul = np.minimum(i[:, None], i[None, :])
    to = np.where(leq, n - 1, i[None, :])
    return FiniteAlgebra(leq, to, to, mul, labels=_letters(n), name=f"godel:{n}")


def lukasiewicz(n: int) -> FiniteAlgebra:
    if n < 1:
        raise UnknownName(f"lukasiewicz:{n}")
    top = n - 1
    i = np.arange(n)
    mul = np.maximum(0, i[:, None] + i[None, :] - top)
    to = np.minimum(top, top - i[:, None] + i[None, :])
    labels = ["1"] if n == 1 else [str(Fraction(k, top)) for k in range(n)]
    return FiniteAlgebra(_chain_leq(n), to, to, mul, labels=labels,
                         name=f"lukasiewicz:{n}")


def heyting_d5() -> FiniteAlgebra:
    """0 < a, b < c < 1 with a, b incomparable; product is meet."""
    labels = ["0", "a", "b", "c", "1"]
    below = {0: [0, 1, 2, 3, 4], 1: [1, 3, 4], 2: [2, 3, 4], 3: [3, 4], 4: [4]}
    n = 5
    leq = np.zeros((n, n), dtype=bool)
    for x, ups in below.items():
        leq[x, ups] = True
    meet = np.zeros((n, n), dtype=np.int64)
    for x, y in itertools.product(range(n), repeat=2):
        lower = [z for z in range(n) if leq[z, x] and leq[z, y]]
        meet[x, y] = max(lower, key=lambda z: leq[:, z].sum())
    to = np.zeros((n, n), dtype=np.int64)
    for x, y in itertools.product(range(n), repeat=2):
        ok = [z for z in range(n) if leq[meet[z, x], y]]
        to[x, y] = max(ok, key=lambda z: leq[:, z].sum())
    return FiniteAlgebra(leq, to, to, meet, labels=labels, name="heyting-d5")


def cyclic(n: int) -> FiniteAlgebra:
    """Z_n with the discrete order: y→z = z - y, x⇝z = z - x, product = sum."""
    if n < 1:
        raise UnknownName(f"cyclic:{n}")
    i = np.arange(n)
    mul = (i[:, None] + i[None, :]) % n
    res = (i[None, :] - i[:, None]) % n
    labels = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteAlgebra(np.eye(n, dtype=bool), res, res, mul, labels=labels,
                         name=f"cyclic:{n}")


def trivial() -> FiniteAlgebra:
    z = [[0]]
    return FiniteAlgebra([[True]], z, z, z, labels=["1"], name="trivial")


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    pairs = list(itertools.product(range(A.n), range(B.n)))
    n = len(pairs)
    idx = {p: k for k, p in enumerate(pairs)}

    def table(ta, tb):
        if ta is None or tb is None:
            return None
        return [[idx[(ta[a1, a2], tb[b1, b2])] for (a2, b2) in pairs] for (a1, b1) in pairs]

    leq = [[bool(A.leq[a1, a2] and B.leq[b1, b2]) for (a2, b2) in pairs]
           for (a1, b1) in pairs]
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]
    return FiniteAlgebra(leq, table(A.to, B.to), table(A.lto, B.lto),
                         table(A.mul, B.mul), labels=labels,
                         name=f"prod({A.name},{B.name})")


def split_top_level(s: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def _build(name: str) -> tuple[FiniteAlgebra, tuple[str, ...]]:
    """Construct an entry and the class checks it advertises."""
    name = name.strip()
    m = re.fullmatch(r"prod\((.*)\)", name)
    if m:
        args = split_top_level(m.group(1))
        if len(args) != 2:
            raise UnknownName(name)
        (A, ca), (B, cb) = _build(args[0]), _build(args[1])
        return product(A, B), tuple(c for c in ca if c in cb)
    m = re.fullmatch(r"(godel|lukasiewicz|cyclic|chain):(\d+)", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise UnknownName(name)
        if n > FAMILY_CAP:
            raise CapExceeded(FAMILY_CAP, {"requested": n, "family": kind})
        if kind == "chain":
            if n != 2:
                raise UnknownName(name)
            A = godel(2)
            return FiniteAlgebra(A.leq, A.to, A.lto, A.mul, labels=A.labels,
                                 name="chain:2"), ("residuated", "pseudo-hoop")
        if kind == "godel":
            return godel(n), ("residuated", "pseudo-hoop")
        if kind == "lukasiewicz":
            return lukasiewicz(n), ("residuated", "pseudo-hoop")
        return cyclic(n), ("residuated",)
    if name == "heyting-d5":
        return heyting_d5(), ("residuated", "pseudo-hoop")
    if name == "trivial":
        return trivial(), ("residuated", "pseudo-hoop")
    raise UnknownName(name)


def catalog(name: str) -> FiniteAlgebra:
    """Build a named algebra and validate the classes it advertises."""
    A, classes = _build(name)
    checks = {"residuated": check_residuated, "pseudo-hoop": check_pseudo_hoop}
    report = check_quantum_b(A)
    for cls in classes:
        report.merge(checks[cls](A))
    if not report.holds:
        raise ValidationFailed(f"{name}: {report.violations}")
    return A


def catalog_entries(max_chain: int = 6) -> list[str]:
    """Canonical list of shipped entries, used by sweeps and round-trip tests."""
    names = ["trivial", "chain:2", "heyting-d5", "cyclic:2", "cyclic:3"]
    names += [f"godel:{n}" for n in range(2, max_chain + 1)]
    names += [f"lukasiewicz:{n}" for n in range(2, max_chain + 1)]
    names += ["prod(godel:2,godel:2)", "prod(godel:2,godel:3)",
              "prod(godel:2,lukasiewicz:3)", "prod(lukasiewicz:3,godel:3)"]
    return names

"""Reading and writing algebra files.

The file is JSON with a fixed key order.  Tables hold element labels; the
order is given either as a full 0/1 matrix or as a list of ``[lower, upper]``
pairs whose reflexive-transitive closure is taken on ingest.  Output always
writes the full matrix, one row per line, so that emitting, reading and
emitting again yields identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import (
    FiniteAlgebra,
    check_extras,
    check_integral,
    check_join_semilattice,
    check_mtl,
    check_pseudo_hoop,
    check_quantum_b,
    check_residuated,
    check_two_sided,
    validate_poset,
)
from .errors import FormatError, InputError, ValidationFailed

KEYS = ("name", "elements", "leq", "to", "lto", "mul", "unit", "bottom", "class")


def _hoop_extra(law):
    def check(A):
        ok = check_pseudo_hoop(A).holds and not check_extras(A).failed(law)
        return ok
    return check


# class name -> predicate used for the optional "class" field
CLASS_CHECKS = {
    "qb": lambda A: check_quantum_b(A).holds,
    "unital": lambda A: A.unit is not None,
    "integral": check_integral,
    "residuated": lambda A: A.mul is not None and check_residuated(A).holds,
    "two-sided": lambda A: A.mul is not None and check_two_sided(A),
    "vsl": check_join_semilattice,
    "residuated-vsl": lambda A: A.is_residuated and check_join_semilattice(A),
    "pseudo-hoop": lambda A: check_pseudo_hoop(A).holds,
    "hoop": lambda A: check_pseudo_hoop(A).holds and A.commutative,
    "pseudo-mtl": lambda A: (A.is_residuated and check_join_semilattice(A)
                             and check_integral(A) and check_mtl(A).pseudo_mtl),
    "pseudo-bl": _hoop_extra("pseudo-bl"),
    "pseudo-mv": _hoop_extra("pseudo-mv"),
}


def _labels_matrix(A: FiniteAlgebra, table) -> list[list[str]]:
    return [[A.labels[v] for v in row] for row in np.asarray(table).tolist()]


def to_document(A: FiniteAlgebra, classes: list[str] | None = None) -> dict:
    doc = {
        "name": A.name,
        "elements": list(A.labels),
        "leq": A.leq.astype(int).tolist(),
        "to": _labels_matrix(A, A.to),
        "lto": _labels_matrix(A, A.lto),
        "mul": None if A.mul is None else _labels_matrix(A, A.mul),
        "unit": None if A.unit is None else A.labels[A.unit],
        "bottom": None if A.bottom is None else A.labels[A.bottom],
    }
    if classes:
        doc["class"] = list(classes)
    return doc


def dumps(A: FiniteAlgebra, classes: list[str] | None = None) -> str:
    """Serialize with fixed key order and one matrix row per line."""
    doc = to_document(A, classes)
    lines = ["{"]
    items = [(k, doc[k]) for k in KEYS if k in doc]
    for i, (key, value) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            rows = [json.dumps(r, ensure_ascii=False) for r in value]
            body = ",\n    ".join(rows)
            lines.append(f'  "{key}": [\n    {body}\n  ]{comma}')
        else:
            lines.append(f'  "{key}": {json.dumps(value, ensure_ascii=False)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _resolve(index: dict, value, where: str) -> int:
    key = str(value)
    if key not in index:
        raise FormatError(f"{where}: unknown element {value!r}")
    return index[key]


def _label_table(doc, key, index, n) -> list[list[int]] | None:
    rows = doc.get(key)
    if rows is None:
        return None
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise FormatError(f"{key}: expected a {n}x{n} matrix")
    return [[_resolve(index, v, f"{key}[{i}][{j}]") for j, v in enumerate(r)]
            for i, r in enumerate(rows)]


def _order(doc, index, n) -> np.ndarray:
    raw = doc.get("leq")
    if not isinstance(raw, list):
        raise FormatError("leq: expected a matrix or a list of pairs")
    # numeric n x n entries mean a matrix; anything else is a list of label pairs
    is_matrix = len(raw) == n and all(
        isinstance(r, list) and len(r) == n
        and all(isinstance(v, (bool, int)) and v in (0, 1) for v in r) for r in raw)
    if is_matrix:
        return np.array(raw, dtype=bool)
    leq = np.eye(n, dtype=bool)
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"leq: bad pair {pair!r}")
        a, b = (_resolve(index, v, "leq") for v in pair)
        leq[a, b] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


def from_document(doc: dict) -> FiniteAlgebra:
    """Build and validate an algebra; raises FormatError or ValidationFailed."""
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    unknown = set(doc) - set(KEYS)
    if unknown:
        raise FormatError(f"unknown keys: {sorted(unknown)}")
    for key in ("elements", "leq", "to", "lto"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    labels = [str(x) for x in doc["elements"]]
    if len(set(labels)) != len(labels) or not labels:
        raise FormatError("elements must be non-empty and unique")
    n = len(labels)
    index = {s: i for i, s in enumerate(labels)}
    poset = validate_poset(_order(doc, index, n))
    to = _label_table(doc, "to", index, n)
    lto = _label_table(doc, "lto", index, n)
    mul = _label_table(doc, "mul", index, n)
    unit = None if doc.get("unit") is None else _resolve(index, doc["unit"], "unit")
    bottom = None if doc.get("bottom") is None else _resolve(index, doc["bottom"], "bottom")
    name = str(doc.get("name") or "")
    A = FiniteAlgebra(poset, to, lto, mul, labels=labels, name=name)
    report = check_quantum_b(A)
    if not report.holds:
        raise ValidationFailed(_describe(A, report))
    if unit is not None:
        bad = [x for x in range(n) if A.to[unit, x] != x or A.lto[unit, x] != x]
        if bad:
            raise ValidationFailed(f"declared unit {labels[unit]} fails at ({labels[bad[0]]})")
    if bottom is not None:
        bad = [x for x in range(n) if not poset.leq[bottom, x]]
        if bad:
            raise ValidationFailed(
                f"declared bottom {labels[bottom]} is not below ({labels[bad[0]]})")
    A = FiniteAlgebra(poset, to, lto, mul, unit=unit, bottom=bottom, labels=labels, name=name)
    classes = doc.get("class") or []
    if isinstance(classes, str):
        classes = [classes]
    for cls in classes:
        if cls not in CLASS_CHECKS:
            raise FormatError(f"unknown class {cls!r}; known: {', '.join(CLASS_CHECKS)}")
        if not CLASS_CHECKS[cls](A):
            raise ValidationFailed(f"declared class {cls!r} does not hold")
    return A


def _describe(A: FiniteAlgebra, report) -> str:
    v = report.violations[0]
    return f"law {v.law_id} fails at ({', '.join(A.labels[i] for i in v.witness)})"


def loads(text: str) -> FiniteAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return from_document(doc)


def read_algebra(path: str | Path) -> FiniteAlgebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def write_algebra(A: FiniteAlgebra, path: str | Path, classes: list[str] | None = None) -> None:
    Path(path).write_text(dumps(A, classes), encoding="utf-8")

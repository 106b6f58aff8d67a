"""Command-line front end: ``qbforge <command> SOURCE [options]``.

SOURCE is an algebra file or ``catalog:NAME``.  Exit status is 0 when every
law the command asserts holds, 1 on a law violation and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

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
)
from .catalog import catalog, catalog_entries, split_top_level
from .errors import CapExceeded, InputError, QBForgeError, ValidationFailed
from .fileformat import dumps, read_algebra, to_document
from .filters import all_filters, mu_law_suite
from .forge import CLASSES, SearchSpec, find_counterexamples
from .hoops import hoop_suite, polar, polar_embedding, subdirect_witness
from .primes import (
    classify_filter,
    mtl_iff_theorem,
    prime_class_inclusions,
    prime_extension,
    prime_filter_theorem,
)
from .quantale import inv_res, is_upper, umul, ures_l, ures_r

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class Report:
    """Collects verdicts and results; renders as text or JSON."""

    def __init__(self, command: list[str], A: FiniteAlgebra | None = None):
        self.data: dict = {"command": command}
        if A is not None:
            self.data["algebra"] = A.name or "unnamed"
        self.data["verdicts"] = {}
        self.data["witnesses"] = {}
        self.data["results"] = {}
        self.A = A
        self.lines: list[str] = []

    def verdict(self, law: str, ok: bool, witness=None) -> None:
        self.data["verdicts"][law] = bool(ok)
        if not ok and witness is not None:
            self.data["witnesses"][law] = witness
        mark = "ok  " if ok else "FAIL"
        tail = "" if ok or witness is None else f"  witness: {witness}"
        self.lines.append(f"  [{mark}] {law}{tail}")

    def class_report(self, report) -> None:
        d = report.to_dict(self.A)
        wit = {v["law"]: v["witness"] for v in d["violations"]}
        for law, ok in d["laws"].items():
            self.verdict(law, ok, wit.get(law))

    def result(self, key: str, value, text: str | None = None) -> None:
        self.data["results"][key] = value
        self.lines.append(text if text is not None else f"{key}: {value}")

    def say(self, text: str) -> None:
        self.lines.append(text)

    @property
    def ok(self) -> bool:
        return all(self.data["verdicts"].values())

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, ensure_ascii=False, indent=2)
        return "\n".join(self.lines)


# ---- helpers -----------------------------------------------------------------


def load_source(source: str) -> FiniteAlgebra:
    if source.startswith("catalog:"):
        return catalog(source[len("catalog:"):])
    return read_algebra(source)


def parse_set(A: FiniteAlgebra, text: str | None, upper: bool = False) -> int:
    """Comma-separated labels; ``{}`` or an empty string is the empty set."""
    if text is None:
        raise InputError("a set argument is required")
    body = text.strip().strip("{}").strip()
    labels = split_top_level(body) if body else []
    try:
        mask = A.mask(labels)
    except (KeyError, ValueError, InputError):
        raise InputError(f"unknown element in {text!r}") from None
    if upper and not is_upper(A, mask):
        raise InputError(f"{A.format_set(mask)} is not an upper set")
    return mask


def _fmt_sets(A, masks) -> list[str]:
    return [A.format_set(m) for m in masks]


# ---- commands ----------------------------------------------------------------


def cmd_validate(A: FiniteAlgebra, args, rep: Report) -> None:
    rep.class_report(check_quantum_b(A))
    classes = []
    residuated = A.mul is not None and check_residuated(A).holds
    hoop = A.mul is not None and A.unit is not None and check_pseudo_hoop(A).holds
    vsl = check_join_semilattice(A)
    integral = check_integral(A)
    facts = [
        ("quantum-b", True),
        ("unital", A.unit is not None),
        ("integral", integral),
        ("residuated", residuated),
        ("two-sided", residuated and check_two_sided(A)),
        ("vee-semilattice", vsl),
        ("pseudo-hoop", hoop),
        ("hoop", hoop and A.commutative),
    ]
    if hoop:
        extras = check_extras(A)
        for law in ("bounded", "prelinearity", "cancellative", "pseudo-bl", "pseudo-mv"):
            facts.append((law, not extras.failed(law)))
    if integral and residuated and vsl:
        flags = check_mtl(A)
        facts += [("to-mtl", flags.to_mtl), ("lto-mtl", flags.lto_mtl),
                  ("pseudo-mtl", flags.pseudo_mtl)]
    classes = [name for name, ok in facts if ok]
    rep.result("classes", classes, "classes: " + ", ".join(classes))
    rep.result("missing", [name for name, ok in facts if not ok],
               "not: " + (", ".join(name for name, ok in facts if not ok) or "-"))


def cmd_filters(A: FiniteAlgebra, args, rep: Report) -> None:
    fs = list(all_filters(A, args.cap))
    rep.result("filters", _fmt_sets(A, fs),
               f"filters ({len(fs)}): " + " ".join(_fmt_sets(A, fs)))
    if check_integral(A):
        rep.say("μ_F law suite:")
        rep.class_report(mu_law_suite(A, args.cap))
    if args.primes:
        _prime_table(A, rep, fs)


def _prime_table(A, rep, fs) -> None:
    if not check_join_semilattice(A):
        rep.say("prime classification needs a join-semilattice; skipped")
        return
    rows = []
    rep.say(f"  {'filter':<24} →-prime ⇝-prime ∨-prime")
    for F in fs:
        c = classify_filter(A, F)
        rows.append({"filter": A.format_set(F), "to": c.to_prime, "lto": c.lto_prime,
                     "vee": c.vee_prime})
        flag = "  (∨-prime, not →-prime)" if c.vee_prime and not c.to_prime else ""
        rep.say(f"  {A.format_set(F):<24} {'yes' if c.to_prime else 'no':<7} "
                f"{'yes' if c.lto_prime else 'no':<7} {'yes' if c.vee_prime else 'no'}{flag}")
    rep.data["results"]["primes"] = rows


def cmd_quantale(A: FiniteAlgebra, args, rep: Report) -> None:
    op = args.op
    if op == "invres":
        a = parse_set(A, args.x, upper=True)
        b = parse_set(A, args.y, upper=True)
        out = inv_res(A, a, b, side=args.side)
        rep.result("result", A.format_set(out),
                   f"invres[{args.side}]({A.format_set(a)}, {A.format_set(b)}) = {A.format_set(out)}")
        return
    X = parse_set(A, args.x, upper=True)
    Y = parse_set(A, args.y, upper=True)
    fn = {"umul": umul, "resr": ures_r, "resl": ures_l}[op]
    sym = {"umul": "·", "resr": "→", "resl": "⇝"}[op]
    out = fn(A, X, Y)
    rep.result("result", A.format_set(out),
               f"{A.format_set(X)} {sym} {A.format_set(Y)} = {A.format_set(out)}")


def cmd_polar(A: FiniteAlgebra, args, rep: Report) -> None:
    M = parse_set(A, args.set)
    P = polar(A, M)
    PP = polar(A, P)
    rep.result("polar", A.format_set(P), f"M⊥ = {A.format_set(P)}")
    rep.result("bipolar", A.format_set(PP), f"M⊥⊥ = {A.format_set(PP)}")
    emb, report = polar_embedding(A, M)
    rep.result("image", A.format_set(emb.image), f"image of M⊥ × M⊥⊥ = {A.format_set(emb.image)}")
    rep.class_report(report)


def cmd_witness(A: FiniteAlgebra, args, rep: Report) -> None:
    M = parse_set(A, args.set or "")
    w = subdirect_witness(A, M)
    if w is None:
        rep.result("witness", None, "witness: none")
        return
    L = A.labels
    rep.result("witness", {"x": L[w.x], "y": L[w.y], "y1": L[w.y1], "y2": L[w.y2],
                           "F1": A.format_set(w.F1), "F2": A.format_set(w.F2)},
               f"witness: x={L[w.x]} y={L[w.y]} = {L[w.y1]} ∧ {L[w.y2]}; "
               f"normal filters {A.format_set(w.F1)} and {A.format_set(w.F2)} meet in {{1}}")


def cmd_primes(A: FiniteAlgebra, args, rep: Report) -> None:
    if args.filter is not None:
        F = parse_set(A, args.filter, upper=True)
        a = A.index(args.element) if args.element else None
        if a is None:
            raise InputError("--filter needs --element")
        G = prime_extension(A, F, a)
        rep.result("extension", A.format_set(G),
                   f"maximal filter ⊇ {A.format_set(F)} avoiding {args.element}: {A.format_set(G)}")
        return
    fs = list(all_filters(A, args.cap))
    _prime_table(A, rep, fs)
    rep.class_report(prime_class_inclusions(A))
    if A.is_residuated and check_two_sided(A):
        rep.class_report(prime_filter_theorem(A))
    if check_integral(A) and A.is_residuated:
        rep.class_report(mtl_iff_theorem(A))


def cmd_hoop(A: FiniteAlgebra, args, rep: Report) -> None:
    rep.class_report(hoop_suite(A))


def cmd_search(args, rep: Report) -> None:
    spec = SearchSpec(max_size=args.size, target_class=args.cls, predicate=args.where,
                      limit=None if args.sample else args.limit)
    found = find_counterexamples(spec)
    if args.sample and len(found) > args.sample:
        rng = np.random.default_rng(args.seed)
        keep = sorted(rng.choice(len(found), size=args.sample, replace=False))
        found = [found[i] for i in keep]
        if args.limit is not None:
            found = found[:args.limit]
    rep.data["results"]["count"] = len(found)
    rep.data["results"]["algebras"] = [to_document(A) for A, _ in found]
    rep.say(f"{len(found)} algebra(s) of class {args.cls}, size ≤ {args.size}, "
            f"where {args.where!r}")
    for A, _ in found:
        rep.say(dumps(A).rstrip())


def cmd_catalog(args, rep: Report) -> int:
    if args.list or not args.name:
        names = catalog_entries()
        rep.result("entries", names, "\n".join(names))
        return EXIT_OK
    A = catalog(args.name)
    text = dumps(A)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.result("written", args.output, f"wrote {args.output}")
    else:
        rep.data["results"]["algebra"] = to_document(A)
        rep.say(text.rstrip())
    return EXIT_OK


# ---- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=None,
                        help="maximum number of upper sets to enumerate")
    common.add_argument("--timing", action="store_true", help="append wall-clock timing")

    p = argparse.ArgumentParser(prog="qbforge", description="Finite quantum B-algebra workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_source(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("source", help="algebra file or catalog:NAME")
        return sp

    with_source("validate", "run every class check")
    sp = with_source("filters", "filter lattice and μ_F law suite")
    sp.add_argument("--primes", action="store_true", help="add the prime classification table")
    sp = with_source("quantale", "operations on upper sets")
    sp.add_argument("--op", choices=("umul", "resl", "resr", "invres"), required=True)
    sp.add_argument("--x", required=True, help="first upper set, e.g. 'a,1'")
    sp.add_argument("--y", required=True, help="second upper set")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp = with_source("polar", "polars and the polar product embedding")
    sp.add_argument("--set", required=True)
    sp = with_source("witness", "subdirect reducibility witness for a subset M")
    sp.add_argument("--set", default="")
    sp = with_source("primes", "prime filter classes and theorems")
    sp.add_argument("--filter")
    sp.add_argument("--element")
    with_source("hoop", "full pseudo-hoop law suite")

    sp = sub.add_parser("search", parents=[common], help="exhaustive counterexample search")
    sp.add_argument("--size", type=int, default=4)
    sp.add_argument("--class", dest="cls", choices=CLASSES, default="integral-qb")
    sp.add_argument("--where", default="true", help="predicate, e.g. 'PF_to != PF_vee'")
    sp.add_argument("--limit", type=int, default=None)
    sp.add_argument("--sample", type=int, default=None, help="random subsample size")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("catalog", parents=[common], help="emit a named algebra")
    sp.add_argument("name", nargs="?")
    sp.add_argument("-o", "--output")
    sp.add_argument("--list", action="store_true")
    return p


COMMANDS = {
    "validate": cmd_validate, "filters": cmd_filters, "quantale": cmd_quantale,
    "polar": cmd_polar, "witness": cmd_witness, "primes": cmd_primes, "hoop": cmd_hoop,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    rep = Report(argv)
    try:
        if args.command == "search":
            cmd_search(args, rep)
        elif args.command == "catalog":
            cmd_catalog(args, rep)
        else:
            A = load_source(args.source)
            rep = Report(argv, A)
            COMMANDS[args.command](A, args, rep)
    except ValidationFailed as exc:
        rep.verdict("validation", False, str(exc))
        print(rep.render(args.format))
        return EXIT_VIOLATION
    except (InputError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QBForgeError as exc:
        rep.verdict(type(exc).__name__, False, str(exc))
        print(rep.render(args.format))
        return EXIT_VIOLATION
    if args.timing:
        rep.data["timing"] = round(time.perf_counter() - start, 4)
        rep.say(f"time: {rep.data['timing']} s")
    print(rep.render(args.format))
    return EXIT_OK if rep.ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

"""Prime filters of residuated ∨-semilattices.

Three primeness notions are computed per filter: →-prime, ⇝-prime and
∨-prime; a filter is *prime* when it is both →- and ⇝-prime.  Properness is
not required, so the whole carrier is prime in every sense.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    ClassReport,
    FiniteAlgebra,
    check_join_semilattice,
    check_mtl,
    check_two_sided,
)
from .errors import PreconditionViolated, TheoremViolation
from .filters import all_filters, extend_filter, is_filter


@dataclass(frozen=True)
class PrimeClassification:
    filter: int
    to_prime: bool
    lto_prime: bool
    vee_prime: bool

    @property
    def prime(self) -> bool:
        return self.to_prime and self.lto_prime


def _require_vsl(A: FiniteAlgebra) -> None:
    if not check_join_semilattice(A):
        raise PreconditionViolated(f"{A.name or 'algebra'} is not a ∨-semilattice")


def classify_filter(A: FiniteAlgebra, F: int) -> PrimeClassification:
    _require_vsl(A)
    b = A.bits(F)
    to_prime = bool((b[A.to] | b[A.to.T]).all())
    lto_prime = bool((b[A.lto] | b[A.lto.T]).all())
    vee_prime = bool((~b[A.join_table] | b[:, None] | b[None, :]).all())
    return PrimeClassification(F, to_prime, lto_prime, vee_prime)


def prime_classes(A: FiniteAlgebra) -> dict[str, frozenset[int]]:
    """The classes PF, PF_to, PF_lto and PF_vee as sets of filter bitmasks."""
    cached = A.__dict__.get("_prime_classes")
    if cached is None:
        cls = [classify_filter(A, F) for F in all_filters(A)]
        cached = A.__dict__["_prime_classes"] = {
            "PF": frozenset(c.filter for c in cls if c.prime),
            "PF_to": frozenset(c.filter for c in cls if c.to_prime),
            "PF_lto": frozenset(c.filter for c in cls if c.lto_prime),
            "PF_vee": frozenset(c.filter for c in cls if c.vee_prime),
        }
    return cached


def _first(s) -> tuple:
    return (min(s, key=lambda m: (bin(m).count("1"), m)),) if s else ()


def prime_class_inclusions(A: FiniteAlgebra) -> ClassReport:
    pc = prime_classes(A)
    report = ClassReport("prime-inclusions")
    for law, small in (("to<=vee", "PF_to"), ("lto<=vee", "PF_lto"), ("pf<=vee", "PF")):
        extra = pc[small] - pc["PF_vee"]
        report.add(law, not extra, _first(extra))
    split = pc["PF"] ^ (pc["PF_to"] & pc["PF_lto"])
    report.add("pf=to&lto", not split, _first(split))
    return report


def _check_prime_hypotheses(A: FiniteAlgebra) -> None:
    _require_vsl(A)
    if not (A.is_residuated and check_two_sided(A)):
        raise PreconditionViolated("needs a 2-sided residuated ∨-semilattice")


def prime_extension(A: FiniteAlgebra, F: int, a: int) -> int:
    """A maximal filter containing F and avoiding a; it is always ∨-prime.

    Built by greedy saturation in ascending element order, then checked for
    maximality against the full filter list and for ∨-primeness.
    """
    _check_prime_hypotheses(A)
    if (F >> a) & 1:
        raise PreconditionViolated(f"{A.labels[a]} lies in the filter")
    if not is_filter(A, F):
        raise PreconditionViolated(f"{A.format_set(F)} is not a filter")
    G = F
    changed = True
    while changed:
        changed = False
        for e in range(A.n):
            if (G >> e) & 1:
                continue
            H = extend_filter(A, G, e)
            if not (H >> a) & 1:
                G = H
                changed = True
    bigger = [H for H in all_filters(A) if H != G and G & ~H == 0 and not (H >> a) & 1]
    if bigger:
        raise TheoremViolation(f"{A.format_set(G)} is not maximal avoiding {A.labels[a]}")
    if not classify_filter(A, G).vee_prime:
        raise TheoremViolation(f"maximal filter {A.format_set(G)} is not ∨-prime")
    return G


@dataclass(frozen=True)
class IntersectionResult:
    """Whether F is the intersection of the ∨-prime (resp. prime) filters above it."""

    vee: bool
    prime: bool

    def __bool__(self) -> bool:
        return self.vee


def intersection_of_primes(A: FiniteAlgebra, F: int) -> IntersectionResult:
    pc = prime_classes(A)

    def meet_above(cls):
        out = A.full
        for G in cls:
            if F & ~G == 0:
                out &= G
        return out

    return IntersectionResult(meet_above(pc["PF_vee"]) == F, meet_above(pc["PF"]) == F)


def prime_filter_theorem(A: FiniteAlgebra) -> ClassReport:
    """Runs prime_extension on every (F, a ∉ F) and the intersection corollary on every F."""
    report = ClassReport("prime-filter-theorem")
    first: dict[str, tuple] = {}
    for F in all_filters(A):
        for a in range(A.n):
            if (F >> a) & 1:
                continue
            try:
                prime_extension(A, F, a)
            except TheoremViolation:
                first.setdefault("pft.extension", (F, a))
        if not intersection_of_primes(A, F).vee:
            first.setdefault("pft.corollary", (F,))
    for law in ("pft.extension", "pft.corollary"):
        report.add(law, law not in first, first.get(law, ()))
    return report


def mtl_iff_theorem(A: FiniteAlgebra) -> ClassReport:
    """→-MTL ⇔ PF_to = PF_vee, ⇝-MTL ⇔ PF_lto = PF_vee, pseudo MTL ⇔ PF = PF_vee."""
    _require_vsl(A)
    flags = check_mtl(A)
    pc = prime_classes(A)
    report = ClassReport("mtl-iff")
    for law, mtl, cls in (("iff.to", flags.to_mtl, "PF_to"),
                          ("iff.lto", flags.lto_mtl, "PF_lto"),
                          ("iff.pseudo", flags.pseudo_mtl, "PF")):
        differ = pc[cls] ^ pc["PF_vee"]
        report.add(law, mtl == (not differ), _first(differ))
    return report


def separation_witness(A: FiniteAlgebra) -> int | None:
    """Smallest filter that is ∨-prime but not →-prime, if any."""
    pc = prime_classes(A)
    extra = pc["PF_vee"] - pc["PF_to"]
    return _first(extra)[0] if extra else None


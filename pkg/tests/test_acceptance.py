"""Acceptance suite: one test per criterion, each with its time budget.

A summary line per criterion is printed at the end of the run.  Criteria
that do not hold fail here with the first witnesses in the message.
"""

import time
from contextlib import contextmanager

import pytest

from qbforge.algebra import check_integral, check_join_semilattice, check_mtl, check_two_sided
from qbforge.catalog import catalog, catalog_entries
from qbforge.fileformat import dumps, loads
from qbforge.filters import _closure_fixpoint, _closure_products, all_filters, mu_law_suite
from qbforge.forge import SearchSpec, enumerate_algebras, in_class, sweep
from qbforge.hoops import hoop_suite
from qbforge.primes import (
    classify_filter,
    intersection_of_primes,
    mtl_iff_theorem,
    prime_classes,
    prime_extension,
)
from qbforge.quantale import QuantaleView, check_quantale_laws, list_upper_sets, umul, umul_product

CATALOG = [catalog(name) for name in catalog_entries()]


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f} s, budget {seconds} s"


def residuated_lattices(algebras):
    return [A for A in algebras
            if check_integral(A) and A.is_residuated and check_join_semilattice(A)]


@pytest.mark.criterion(1, "mu_F conucleus and proposition items on size<=4 sweep + catalog")
def test_mu_suite():
    failures = []
    with budget(60):
        for A in list(sweep(4)) + CATALOG:
            if not check_integral(A):
                continue
            report = mu_law_suite(A)
            for v in report.violations:
                sets = ", ".join(A.format_set(m) for m in v.witness)
                failures.append(f"{v.law_id} on {A.name} at F, X = {sets}")
    assert not failures, f"{len(failures)} violations, e.g. " + "; ".join(failures[:4])


@pytest.mark.criterion(2, "quantale laws on catalog algebras with |U(A)| <= 64")
def test_quantale_laws():
    checked = 0
    with budget(10):
        for A in CATALOG:
            if len(list_upper_sets(A, cap=10**6)) > 64:
                continue
            report = check_quantale_laws(A)
            assert report.holds, (A.name, report.violations[:3])
            checked += 1
    assert checked >= 10


@pytest.mark.criterion(3, "supercompact = principal, balanced => supercompact on size<=4 sweep")
def test_supercompact_characterization():
    principal_bad, balanced_bad = [], []
    with budget(30):
        for A in sweep(4):
            view = QuantaleView(A)
            sc = view.supercompact_flags()
            bal = view.balanced_flags()
            got = {view.sets[i] for i in range(view.k) if sc[i]}
            if got != set(A.up):
                principal_bad.append(A.name)
            for i in range(view.k):
                if bal[i] and not sc[i]:
                    balanced_bad.append(f"{A.format_set(view.sets[i])} in {A.name}")
    assert not principal_bad, f"supercompact != principal on {principal_bad}"
    assert not balanced_bad, (f"{len(balanced_bad)} balanced, non-supercompact upper sets, "
                              f"e.g. " + "; ".join(balanced_bad[:3]))


@pytest.mark.criterion(4, "hoop suite over all pseudo-hoops of size <= 4 and all subsets M")
def test_hoop_suite():
    hoops = [A for A in sweep(4) if in_class(A, "pseudo-hoop")]
    assert len(hoops) == 9
    with budget(120):
        for A in hoops:
            report = hoop_suite(A)
            assert report.holds, (A.name, report.violations[:3])


@pytest.mark.criterion(5, "prime filter theorem and its corollary on size<=4 sweep")
def test_prime_filter_theorem():
    pairs = 0
    with budget(60):
        for A in residuated_lattices(sweep(4)):
            if not check_two_sided(A):
                continue
            fs = list(all_filters(A))
            for F in fs:
                for a in range(A.n):
                    if F >> a & 1:
                        continue
                    G = prime_extension(A, F, a)
                    assert F & ~G == 0 and not G >> a & 1
                    assert not any(H != G and G & ~H == 0 and not H >> a & 1 for H in fs)
                    assert classify_filter(A, G).vee_prime
                    pairs += 1
                assert intersection_of_primes(A, F).vee, (A.name, F)
    assert pairs > 0


@pytest.mark.criterion(6, "MTL biconditionals on sweep; heyting-d5 separates; chains confirm")
def test_mtl_iff():
    with budget(60):
        for A in residuated_lattices(sweep(4)):
            report = mtl_iff_theorem(A)
            assert report.holds, (A.name, report.violations)
        d5 = catalog("heyting-d5")
        assert not check_mtl(d5).to_mtl
        unit = classify_filter(d5, d5.mask(["1"]))
        assert unit.vee_prime and not unit.to_prime
        assert mtl_iff_theorem(d5).holds
        for n in range(2, 7):
            for fam in ("godel", "lukasiewicz"):
                A = catalog(f"{fam}:{n}")
                assert check_mtl(A).pseudo_mtl
                pc = prime_classes(A)
                assert pc["PF"] == pc["PF_vee"]
                assert mtl_iff_theorem(A).holds


@pytest.mark.criterion(7, "oracle equivalence: filters, products, pruned vs unpruned search")
def test_oracle_equivalence():
    with budget(60):
        for A in sweep(4):
            if not A.is_residuated:
                continue
            for seed in range(1, 1 << A.n):
                assert _closure_fixpoint(A, seed) == _closure_products(A, seed), (A.name, seed)
            sets = list_upper_sets(A)
            for X in sets:
                for Y in sets:
                    assert umul(A, X, Y) == umul_product(A, X, Y)
        for cls in ("qb", "integral-qb", "residuated", "pseudo-hoop"):
            for dedup in (True, False):
                spec = SearchSpec(max_size=3, target_class=cls, dedup=dedup)
                fast = [dumps(A) for A in enumerate_algebras(spec)]
                slow = [dumps(A) for A in enumerate_algebras(spec, pruned=False)]
                assert sorted(fast) == sorted(slow), (cls, dedup)


@pytest.mark.criterion(8, "catalog round-trip byte-identical; repeated sweeps identical")
def test_round_trip_and_determinism():
    for A in CATALOG:
        text = dumps(A)
        assert dumps(loads(text)) == text, A.name
        assert dumps(catalog(A.name)) == text
    sweep.cache_clear()
    first = [dumps(A) for A in sweep(4)]
    sweep.cache_clear()
    second = [dumps(A) for A in sweep(4)]
    assert first == second

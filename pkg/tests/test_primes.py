import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from qbforge.algebra import check_integral, check_join_semilattice, check_mtl, check_two_sided
from qbforge.catalog import catalog, catalog_entries
from qbforge.errors import PreconditionViolated
from qbforge.filters import all_filters
from qbforge.forge import sweep
from qbforge.primes import (
    classify_filter,
    intersection_of_primes,
    mtl_iff_theorem,
    prime_class_inclusions,
    prime_classes,
    prime_extension,
    prime_filter_theorem,
    separation_witness,
)

LATTICES = [A for A in list(sweep(4)) + [catalog(n) for n in catalog_entries()]
            if check_integral(A) and A.is_residuated and check_join_semilattice(A)]


def test_chain_filters_are_prime(g3):
    c = classify_filter(g3, g3.mask(["a", "1"]))
    assert c.to_prime and c.lto_prime and c.vee_prime and c.prime


def test_unit_filter_of_heyting_d5(d5):
    c = classify_filter(d5, d5.mask(["1"]))
    assert c.vee_prime and not c.to_prime and not c.prime


def test_whole_carrier_is_prime_in_every_sense():
    for A in LATTICES:
        c = classify_filter(A, A.full)
        assert c.to_prime and c.lto_prime and c.vee_prime


def test_classification_matches_definitions():
    for A in LATTICES:
        if A.n > 6:
            continue
        for F in all_filters(A):
            c = classify_filter(A, F)
            assert (c.to_prime, c.lto_prime, c.vee_prime) == ref.prime_kinds(A, ref.from_mask(F))


def test_inclusions(g3, l3, d5):
    for A in (g3, l3, d5):
        assert prime_class_inclusions(A).holds
    pc = prime_classes(g3)
    assert pc["PF"] == pc["PF_to"] == pc["PF_lto"] == pc["PF_vee"]
    pc = prime_classes(d5)
    assert d5.mask(["1"]) in pc["PF_vee"] - pc["PF_to"]
    assert separation_witness(d5) == d5.mask(["1"])
    assert separation_witness(g3) is None


def test_inclusions_over_sweep():
    for A in LATTICES:
        assert prime_class_inclusions(A).holds, A.name


def test_extension_examples(g3, d5):
    G = prime_extension(g3, g3.mask(["1"]), g3.index("0"))
    assert g3.format_set(G) == "{a,1}"
    G = prime_extension(d5, d5.mask(["1"]), d5.index("c"))
    assert d5.format_set(G) == "{1}"
    with pytest.raises(PreconditionViolated):
        prime_extension(g3, g3.mask(["1"]), g3.index("1"))


def test_extension_is_maximal_and_vee_prime():
    for A in LATTICES:
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
                assert ref.prime_kinds(A, ref.from_mask(G))[2]


def test_intersection_corollary_examples(g3, d5):
    assert intersection_of_primes(g3, g3.mask(["a", "1"]))
    assert intersection_of_primes(d5, d5.mask(["c", "1"]))
    assert intersection_of_primes(d5, d5.full)


def test_corollary_with_prime_reading_fails_on_heyting_d5(d5):
    res = intersection_of_primes(d5, d5.mask(["1"]))
    assert res.vee and not res.prime


def test_prime_filter_theorem_over_sweep():
    for A in LATTICES:
        if check_two_sided(A):
            assert prime_filter_theorem(A).holds, A.name


def test_mtl_iff(g3, d5):
    assert mtl_iff_theorem(g3).holds
    report = mtl_iff_theorem(d5)
    assert report.holds
    assert not check_mtl(d5).pseudo_mtl
    assert prime_classes(d5)["PF"] != prime_classes(d5)["PF_vee"]


def test_mtl_iff_over_sweep_and_catalog():
    for A in LATTICES:
        assert mtl_iff_theorem(A).holds, A.name


def test_chains_confirm_mtl_direction():
    for n in range(2, 7):
        for fam in ("godel", "lukasiewicz"):
            A = catalog(f"{fam}:{n}")
            assert check_mtl(A).pseudo_mtl
            pc = prime_classes(A)
            assert pc["PF"] == pc["PF_to"] == pc["PF_lto"] == pc["PF_vee"]


def test_vee_semilattice_required():
    C = catalog("cyclic:2")
    with pytest.raises(PreconditionViolated):
        classify_filter(C, C.full)


@settings(max_examples=60)
@given(st.data())
def test_product_distributes_over_joins(data):
    A = data.draw(st.sampled_from(LATTICES))
    x, y, z = (data.draw(st.integers(0, A.n - 1)) for _ in range(3))
    J, M = A.join_table, A.mul
    assert M[x, J[y, z]] == J[M[x, y], M[x, z]]
    assert M[J[y, z], x] == J[M[y, x], M[z, x]]


def test_classes_are_monotone_in_documented_order():
    for A in LATTICES:
        pc = prime_classes(A)
        assert pc["PF"] <= pc["PF_to"] <= pc["PF_vee"]
        assert pc["PF"] <= pc["PF_lto"] <= pc["PF_vee"]


def test_witness_pairs_listed_for_heyting_d5(d5):
    a, b = d5.index("a"), d5.index("b")
    one = d5.mask(["1"])
    assert not (one >> int(d5.to[a, b]) & 1 or one >> int(d5.to[b, a]) & 1)
    assert all(d5.join(x, y) != d5.unit for x, y in itertools.product(range(4), repeat=2))

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbforge.algebra import (
    FiniteAlgebra,
    check_integral,
    check_mtl,
    check_pseudo_hoop,
    check_quantum_b,
    check_residuated,
    validate_poset,
)
from qbforge.errors import CapExceeded, InputError
from qbforge.fileformat import dumps
from qbforge.forge import (
    SearchSpec,
    algebra_properties,
    automorphisms,
    canonical_poset,
    compile_predicate,
    enumerate_algebras,
    enumerate_posets,
    find_counterexamples,
    in_class,
    sweep,
)


@pytest.mark.parametrize("n,labeled,iso", [(1, 1, 1), (2, 3, 2), (3, 19, 5), (4, 219, 16),
                                           (5, 4231, 63)])
def test_poset_counts(n, labeled, iso):
    assert sum(1 for _ in enumerate_posets(n)) == labeled
    assert sum(1 for _ in enumerate_posets(n, dedup=True)) == iso


def test_three_element_posets_against_all_relations():
    found = set()
    for bits in range(1 << 9):
        m = np.array([(bits >> i) & 1 for i in range(9)], dtype=bool).reshape(3, 3)
        try:
            validate_poset(m)
        except InputError:
            continue
        found.add(m.tobytes())
    assert found == {P.leq.tobytes() for P in enumerate_posets(3)}


@settings(max_examples=50)
@given(st.sampled_from(list(enumerate_posets(4))), st.permutations(range(4)))
def test_canonical_form_is_relabeling_invariant(P, perm):
    inv = np.argsort(perm)
    Q = P.leq[np.ix_(inv, inv)]
    assert canonical_poset(P.leq)[0] == canonical_poset(Q)[0]


def test_automorphisms_of_antichain_and_chain():
    assert len(automorphisms(np.eye(3, dtype=bool))) == 6
    assert len(automorphisms(np.triu(np.ones((3, 3), dtype=bool)))) == 1


def test_size_one_is_trivial_only():
    for cls in ("qb", "integral-qb", "residuated", "pseudo-hoop"):
        algs = list(enumerate_algebras(SearchSpec(max_size=1, target_class=cls)))
        assert len(algs) == 1 and algs[0].n == 1


def test_two_chain_has_unique_hoop_structure():
    algs = [A for A in enumerate_algebras(SearchSpec(max_size=2, target_class="residuated"))
            if A.n == 2]
    assert len(algs) == 1
    A = algs[0]
    assert check_pseudo_hoop(A).holds
    assert A.mul.tolist() == [[0, 0], [0, 1]]


def test_small_pseudo_hoops_are_commutative():
    algs = list(enumerate_algebras(SearchSpec(max_size=5, target_class="pseudo-hoop")))
    assert [A for A in algs if not A.commutative] == []
    assert [sum(A.n == k for A in algs) for k in range(1, 6)] == [1, 1, 2, 5, 10]


def test_sweep_counts_per_size():
    counts = {}
    for cls in ("integral-qb", "residuated", "residuated-vsl", "pseudo-hoop", "hoop"):
        algs = list(enumerate_algebras(SearchSpec(max_size=4, target_class=cls)))
        counts[cls] = [sum(A.n == k for A in algs) for k in range(1, 5)]
    assert counts == {
        "integral-qb": [1, 1, 3, 17],
        "residuated": [1, 1, 2, 9],
        "residuated-vsl": [1, 1, 2, 9],
        "pseudo-hoop": [1, 1, 2, 5],
        "hoop": [1, 1, 2, 5],
    }
    general = list(enumerate_algebras(SearchSpec(max_size=3, target_class="qb")))
    assert [sum(A.n == k for A in general) for k in range(1, 4)] == [1, 3, 23]


def test_every_emitted_algebra_passes_its_class():
    for cls in ("integral-qb", "residuated", "pseudo-hoop"):
        for A in enumerate_algebras(SearchSpec(max_size=4, target_class=cls)):
            assert check_quantum_b(A).holds
            assert check_integral(A)
            if cls != "integral-qb":
                assert check_residuated(A).holds
            if cls == "pseudo-hoop":
                assert check_pseudo_hoop(A).holds


def test_dedup_matches_grouping_of_labeled_output():
    labeled = list(enumerate_algebras(SearchSpec(max_size=3, min_size=3,
                                                 target_class="integral-qb", dedup=False)))
    classes = set()
    for A in labeled:
        keys = []
        for perm in itertools.permutations(range(3)):
            p = np.asarray(perm)
            inv = np.argsort(p)
            leq = A.leq[np.ix_(inv, inv)]
            to = p[A.to[np.ix_(inv, inv)]]
            keys.append((leq.tobytes(), to.tobytes()))
        classes.add(min(keys))
    deduped = list(enumerate_algebras(SearchSpec(max_size=3, min_size=3,
                                                 target_class="integral-qb")))
    assert len(classes) == len(deduped) == 3


def test_two_element_scan_over_both_tables():
    """Independent check at n = 2: every pair of implication tables on every order."""
    found = set()
    for P in enumerate_posets(2):
        for t in itertools.product(range(2), repeat=4):
            for l in itertools.product(range(2), repeat=4):
                A = FiniteAlgebra(P, np.reshape(t, (2, 2)), np.reshape(l, (2, 2)))
                if check_quantum_b(A).holds:
                    found.add((P.leq.tobytes(), A.to.tobytes(), A.lto.tobytes()))
    emitted = {(A.leq.tobytes(), A.to.tobytes(), A.lto.tobytes())
               for A in enumerate_algebras(SearchSpec(max_size=2, min_size=2,
                                                      target_class="qb", dedup=False))}
    assert found == emitted


def test_caps():
    with pytest.raises(CapExceeded):
        list(enumerate_algebras(SearchSpec(max_size=6)))
    with pytest.raises(CapExceeded):
        list(enumerate_algebras(SearchSpec(max_size=4, target_class="qb")))
    with pytest.raises(CapExceeded):
        list(enumerate_posets(6))
    with pytest.raises(InputError):
        list(enumerate_algebras(SearchSpec(max_size=2, target_class="ring")))


def test_limit_and_determinism():
    a = list(enumerate_algebras(SearchSpec(max_size=4, limit=7)))
    assert len(a) == 7
    b = list(enumerate_algebras(SearchSpec(max_size=4, limit=7)))
    assert [dumps(x) for x in a] == [dumps(x) for x in b]


def test_predicates():
    p = compile_predicate("PF != PF_vee and not pseudo_mtl")
    assert p({"PF": frozenset({1}), "PF_vee": frozenset({1, 2}), "pseudo_mtl": False})
    assert not compile_predicate("false")({})
    assert compile_predicate("size >= 3")({"size": 4})
    assert not compile_predicate("prelinear")({"prelinear": None})
    with pytest.raises(InputError):
        compile_predicate("__import__('os')")
    with pytest.raises(InputError):
        compile_predicate("PF !=")
    with pytest.raises(InputError):
        compile_predicate("nonsense")({"size": 1})


def test_search_false_is_empty():
    assert find_counterexamples(SearchSpec(max_size=4, predicate="false")) == []


def test_search_separators_at_size_five():
    spec = SearchSpec(max_size=5, target_class="residuated-vsl", predicate="PF_to != PF_vee")
    found = find_counterexamples(spec)
    assert found
    for A, props in found:
        assert not check_mtl(A).to_mtl
        assert props["to_mtl"] is False


def test_search_never_violates_coprime_lemma():
    spec = SearchSpec(max_size=5, target_class="pseudo-hoop", predicate="not coprime_ok")
    assert find_counterexamples(spec) == []


def test_mtl_iff_through_search():
    spec = SearchSpec(max_size=5, target_class="residuated-vsl",
                      predicate="pseudo_mtl != (PF == PF_vee)")
    assert find_counterexamples(spec) == []


def test_properties_of_trivial():
    props = algebra_properties(next(iter(sweep(1))))
    assert props["size"] == 1 and props["pseudo_hoop"] and props["pseudo_mtl"]


def test_in_class_names():
    A = next(iter(sweep(1)))
    assert all(in_class(A, c) for c in ("qb", "residuated", "hoop"))

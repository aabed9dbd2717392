import pytest

from finsemi import catalog
from finsemi.enumeration import T2RShapeSearch
from finsemi.errors import NotT2RShaped, PartitionMismatch
from finsemi.green import j_structure
from finsemi.structure import (
    T2Decomposition,
    classify_we_delta,
    find_t2_decompositions,
    recognize_t2,
    t2r_necessary_propositions,
    theorem1_conditions,
)
from finsemi.table import rees_quotient

from conftest import corpus_upto, near_miss_order5


def of_kind(table, kind):
    return [d for d in find_t2_decompositions(table) if d.kind == kind]


def shaped_tables(orders=(4, 5, 6)):
    for order in orders:
        yield from T2RShapeSearch(order, rules=(), mode="all").run()


def test_find_decompositions_b0():
    (d,) = of_kind(catalog.b0(), "T2R")
    assert d.s1 == (0, 1) and d.s0 == {2}
    assert not d.s0_nontrivial and d.s0_nil and d.s1_law_ok
    assert not of_kind(catalog.b0(), "T2L")


def test_find_decompositions_z4(z4):
    assert not of_kind(z4, "T2R") and not of_kind(z4, "T2L")
    (d,) = of_kind(z4, "T1")
    assert d.s1 == (0,) and d.s0 == {1, 2, 3}
    assert not d.products_into_s0


def test_find_decompositions_rz2(rz2):
    (d,) = of_kind(rz2, "T2R")
    assert d.s0 == frozenset() and not d.valid


def test_t2l_is_dual_of_t2r():
    for t in corpus_upto(4):
        left = {(d.s1, d.s0) for d in of_kind(t, "T2L")}
        right_of_dual = {(d.s1, d.s0) for d in of_kind(t.transpose(), "T2R")}
        assert left == right_of_dual


def test_recognize_absent_examples(n3):
    for kind in ("T1", "T2R", "T2L"):
        assert recognize_t2(catalog.b0(), kind) is None
        assert recognize_t2(n3, kind) is None
    for t in corpus_upto(3):
        assert recognize_t2(t, "T2R") is None


def test_finite_t1_example():
    # N2 with an identity adjoined: S0 = {0, a}, S1 = {1}
    t = catalog.nil_chain(2)
    t1 = catalog.adjoin_identity(t).table
    d = recognize_t2(t1, "T1")
    assert d is not None and d.s1 == (2,) and d.s0 == {0, 1}


def test_no_t2r_or_t2l_up_to_order5():
    for t in corpus_upto(5):
        assert recognize_t2(t, "T2R") is None
        assert recognize_t2(t, "T2L") is None


def test_theorem1_b0():
    t = catalog.b0()
    (d,) = of_kind(t, "T2R")
    rep = theorem1_conditions(t, d)
    assert rep.conditions[1] is False
    assert rep.witnesses[1] == {"s0_nontrivial": [2]}
    assert 5 in rep.vacuous and rep.conditions[5]
    assert not rep.holds


def test_theorem1_fabricated_t1_on_n3(n3):
    d = T2Decomposition(frozenset({1, 2}), (0,), "T1", False, True, True, False, True)
    rep = theorem1_conditions(n3, d)
    assert rep.conditions[1] is False
    assert rep.witnesses[1]["s0_nil"] == [1, 2]
    assert "s0_ideal" in rep.witnesses[1]


def test_theorem1_partition_mismatch(n3):
    d = T2Decomposition(frozenset({1}), (0,), "T1", False, False, True, False, True)
    with pytest.raises(PartitionMismatch):
        theorem1_conditions(n3, d)


def test_theorem1_iff_recognized():
    for t in list(corpus_upto(5)) + list(shaped_tables((4, 5))):
        for d in find_t2_decompositions(t):
            if d.kind == "T1":
                continue
            assert theorem1_conditions(t, d).holds == d.valid
            assert not d.valid


def test_uncorrected_guard_only_adds_instances():
    seen_difference = False
    for t in shaped_tables((4, 5, 6)):
        for d in of_kind(t, "T2R"):
            new = theorem1_conditions(t, d, corrected=True)
            old = theorem1_conditions(t, d, corrected=False)
            assert set(new.cond5_checked) <= set(old.cond5_checked)
            seen_difference |= set(new.cond5_checked) != set(old.cond5_checked)
            assert old.conditions[5] <= new.conditions[5]
    assert seen_difference


def test_rees_reduction_of_two_element_j_class():
    checked = 0
    for t in shaped_tables((4, 5, 6)):
        k = t.order - 2
        d = next(d for d in of_kind(t, "T2R") if d.s1 == (k, k + 1))
        rep = theorem1_conditions(t, d)
        if not (rep.conditions[1] and rep.conditions[2]):
            continue
        js = j_structure(t)
        for b in sorted(d.s0):
            if len(js.j_class(b)) != 2:
                continue
            q, m = rees_quotient(t, js.i_set(b))
            qjs = j_structure(q)
            assert len(qjs.j_class(m[b])) == 2
            assert qjs.i_set(m[b]) == {0}
            checked += 1
    assert checked > 0


def test_classify_examples(z4, n3):
    r = classify_we_delta(z4)
    assert r.template == "G" and r.witness == {"p": 2, "k": 2}
    assert classify_we_delta(catalog.b0()).template == "B0"
    assert classify_we_delta(catalog.b1()).template == "B1"
    assert classify_we_delta(n3).template == "NIL_CHAIN"
    assert classify_we_delta(catalog.right_zero()).template == "B"
    assert classify_we_delta(catalog.trivial()).template == "G"
    assert classify_we_delta(catalog.adjoin_zero(catalog.cyclic_group(2))).template == "G0"
    assert classify_we_delta(catalog.cyclic_group(6)).template == "NOT_WE_DELTA"


def test_classification_total_and_disjoint():
    for t in corpus_upto(5):
        r = classify_we_delta(t)
        assert len(r.matches) <= 1
        assert r.template not in ("T2R", "T2L")


def test_propositions_near_miss():
    t = near_miss_order5()
    (d,) = of_kind(t, "T2R")
    rep = t2r_necessary_propositions(t, d)
    assert rep.preconditions == {"s0_nil": True, "s0_nontrivial": True, "s0_ideal": True}
    assert rep.results["P7"] == {"status": "fails", "witness": {"S0^2": [0, 2], "missing": [1]}}
    assert rep.results["P6"] == {"status": "holds", "witness": [1]}
    assert rep.results["P4"] == {"status": "fails", "witness": [0, 1, 2]}
    assert rep.status("P2") == "vacuous" and rep.status("C3") == "vacuous"


def test_propositions_degenerate_b0():
    t = catalog.b0()
    (d,) = of_kind(t, "T2R")
    rep = t2r_necessary_propositions(t, d)
    assert rep.preconditions["s0_nontrivial"] is False


def test_propositions_reject_non_t2r(lz2):
    t = catalog.adjoin_zero(lz2)
    (d,) = of_kind(t, "T2L")
    with pytest.raises(NotT2RShaped):
        t2r_necessary_propositions(t, d)


def test_propositions_on_shaped_tables_run():
    statuses = set()
    for t in shaped_tables((5, 6)):
        k = t.order - 2
        d = next(d for d in of_kind(t, "T2R") if d.s1 == (k, k + 1))
        rep = t2r_necessary_propositions(t, d)
        statuses.update((name, r["status"]) for name, r in rep.results.items())
    # every shaped finite candidate violates P7, since finite nil semigroups are nilpotent
    assert ("P7", "holds") not in statuses
    assert ("C3", "holds") in statuses or ("C3", "fails") in statuses

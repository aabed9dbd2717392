import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from finsemi import catalog
from finsemi.enumeration import (
    SemigroupSearch,
    T2RShapeSearch,
    are_isomorphic,
    canonical_form,
    enumerate_semigroups,
    search_t2r,
)
from finsemi.errors import SizeLimitExceeded
from finsemi.table import relabel, validate_table

from conftest import all_binary_tables, brute_force_associative, corpus, labeled


def brute_canonical(t):
    """Row-major lex-least relabelled table over all n! permutations."""
    best = None
    for perm in itertools.permutations(range(t.order)):
        flat = tuple(v for row in relabel(t, perm).rows for v in row)
        if best is None or flat < best:
            best = flat
    return best


def flat(t):
    return tuple(v for row in t.rows for v in row)


def naive_count(n):
    classes = set()
    for rows in all_binary_tables(n):
        if not brute_force_associative(rows):
            continue
        t = validate_table(n, rows)
        classes.add(brute_canonical(t))
    return len(classes)


def test_canonical_form_examples(lz2, rz2, z4):
    swapped = relabel(lz2, (1, 0))
    assert canonical_form(swapped).table == canonical_form(lz2).table
    assert canonical_form(rz2).table != canonical_form(lz2).table
    assert canonical_form(z4).table != canonical_form(catalog.klein_four()).table


def test_canonical_form_matches_brute_force_small():
    for n in (1, 2, 3):
        for t in labeled(n):
            assert flat(canonical_form(t).table) == brute_canonical(t)


@pytest.mark.slow
def test_canonical_form_matches_brute_force_order4():
    for t in labeled(4)[::7]:
        assert flat(canonical_form(t).table) == brute_canonical(t)


def test_canonical_form_relabeling_is_witness():
    for t in labeled(3):
        c = canonical_form(t)
        assert relabel(t, c.relabeling) == c.table


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.sampled_from(corpus(n)), st.permutations(list(range(n))))))
def test_canonical_form_invariant_and_idempotent(data):
    t, perm = data
    c = canonical_form(t)
    assert canonical_form(relabel(t, tuple(perm))).table == c.table
    assert canonical_form(c.table).table == c.table


def test_are_isomorphic(z4, rz2):
    moved = relabel(z4, (0, 2, 1, 3))
    v = are_isomorphic(z4, moved)
    assert v.holds
    assert relabel(z4, v.witness) == moved
    assert not are_isomorphic(rz2, catalog.semilattice_chain(2)).holds
    assert not are_isomorphic(z4, catalog.klein_four()).holds
    assert not are_isomorphic(rz2, z4).holds


def test_counts_up_to_isomorphism():
    assert [len(corpus(n)) for n in (1, 2, 3, 4)] == [1, 5, 24, 188]


def test_counts_match_naive_oracle_small():
    assert naive_count(1) == 1
    assert naive_count(2) == 5


def test_labeled_counts_match_brute_force():
    assert len(labeled(2)) == sum(1 for r in all_binary_tables(2) if brute_force_associative(r)) == 8
    assert len(labeled(3)) == 113


def test_orbit_stabilizer():
    for n in (1, 2, 3, 4):
        total = sum(math.factorial(n) // canonical_form(t).automorphism_count for t in corpus(n))
        assert total == len(labeled(n))


def test_emitted_tables_are_valid_and_canonical():
    for n in (1, 2, 3, 4):
        seen = set()
        for t in corpus(n):
            assert validate_table(n, t.to_lists()) == t
            assert canonical_form(t).table == t
            seen.add(t)
        assert len(seen) == len(corpus(n))


def test_labeled_output_is_closed_under_relabeling():
    tables = set(labeled(3))
    for t in tables:
        for perm in itertools.permutations(range(3)):
            assert relabel(t, perm) in tables


def test_size_cap():
    with pytest.raises(SizeLimitExceeded):
        next(enumerate_semigroups(7))
    with pytest.raises(ValueError):
        next(enumerate_semigroups(0))


def test_parallel_run_is_deterministic():
    serial = SemigroupSearch(4)
    a = list(serial.run())
    par = SemigroupSearch(4)
    b = list(par.run_parallel(2, split_depth=4))
    assert a == b
    assert serial.counters == par.counters


@pytest.mark.parametrize("chunk", [1, 7, 50, 333])
def test_interrupt_and_resume_gives_same_result(chunk):
    full = SemigroupSearch(3)
    expected = list(full.run())
    search = SemigroupSearch(3)
    got, cursor = [], None
    while True:
        got.extend(search.run(start=cursor, max_nodes=chunk))
        cursor = search.cursor
        if cursor is None:
            break
    assert got == expected
    assert search.counters == full.counters


def test_t2r_search_absent_small():
    out = search_t2r(5)
    assert out.complete and out.witness is None
    assert set(out.counters) == {4, 5}
    # nothing to search below order 4
    empty = search_t2r(3)
    assert empty.complete and empty.witness is None and empty.counters == {}


def test_t2r_search_resume_matches_uninterrupted():
    full = search_t2r(5)
    state, out = None, None
    while True:
        out = search_t2r(5, resume=state, max_nodes=97)
        if out.complete:
            break
        state = out.state
    assert out.witness is None
    assert out.counters == full.counters


def test_t2r_pruning_is_sound_up_to_order5():
    for order in (4, 5):
        pruned = T2RShapeSearch(order, rules=("p6", "p7"), mode="witness")
        unpruned = T2RShapeSearch(order, rules=(), mode="witness")
        assert list(pruned.run()) == list(unpruned.run()) == []


def test_t2r_shaped_tables_have_the_shape():
    search = T2RShapeSearch(5, rules=(), mode="all")
    tables = list(search.run())
    assert len(tables) == search.counters["shaped"] > 0
    for t in tables:
        assert brute_force_associative(t.rows)
        u, v = 3, 4
        assert t.mul(u, v) == v and t.mul(v, u) == u
        assert all(t.mul(s, e) < 3 and t.mul(e, s) < 3 for s in range(3) for e in (u, v))


def test_t2r_shape_search_rejects_small_orders():
    with pytest.raises(ValueError):
        T2RShapeSearch(3)

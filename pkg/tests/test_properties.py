import itertools

import pytest

from finsemi import catalog
from finsemi.errors import InputError
from finsemi.green import ideals_form_chain
from finsemi.properties import (
    IdentitySpec,
    is_left_commutative,
    is_medial,
    is_nil,
    is_permutative,
    is_r_commutative,
    is_weakly_exponential,
    recognize_special,
    satisfies_identity,
)
from finsemi.table import adjoin_identity, adjoin_zero, find_zero, is_commutative

from conftest import corpus, corpus_upto


def we_oracle(t, limit=50):
    """Direct search: n in 1..limit, m in 0..limit, powers by repeated products."""
    rows = t.rows

    def pw(x, k):
        out = [None, x]
        for _ in range(k - 1):
            out.append(rows[out[-1]][x])
        return out

    for a in range(t.order):
        for b in range(t.order):
            c = rows[a][b]
            pa, pb, pc = pw(a, limit), pw(b, limit), pw(c, 2 * limit)
            for n in range(1, limit + 1):
                p = rows[pa[n]][pb[n]]
                ok = pc[n] == p or any(
                    pc[n + m] == rows[p][pc[m]] == rows[pc[m]][p] for m in range(1, limit + 1)
                )
                if not ok:
                    return (a, b, n)
    return None


def test_is_nil_examples(n3, rz2):
    assert is_nil(n3)
    assert not is_nil(rz2)
    assert not is_nil(catalog.semilattice_chain(2))


def test_nil_has_zero_ideal():
    for t in corpus_upto(4):
        if is_nil(t):
            z = find_zero(t)
            assert z is not None


def test_weakly_exponential_examples(rz2):
    for t in corpus_upto(4):
        if is_commutative(t):
            assert is_weakly_exponential(t)
    assert is_weakly_exponential(rz2)
    assert is_weakly_exponential(catalog.b1())


def test_weakly_exponential_failure_witness():
    failing = [t for t in corpus(4) if not is_weakly_exponential(t)]
    assert all(is_weakly_exponential(t) for t in corpus_upto(3))
    assert failing
    for t in failing:
        assert tuple(is_weakly_exponential(t).witness) == we_oracle(t)


def test_weakly_exponential_matches_oracle_order3():
    for t in corpus_upto(3):
        assert is_weakly_exponential(t).holds == (we_oracle(t) is None)


def test_r_commutative(rz2, lz2):
    for t in corpus_upto(3):
        if is_commutative(t):
            assert is_r_commutative(t)
    assert is_r_commutative(rz2)
    v = is_r_commutative(lz2)
    assert not v and v.witness == (0, 1)


def test_identity_parsing():
    spec = IdentitySpec.parse("axyb=ayxb")
    assert spec.variable_count == 4
    assert spec.left == (0, 1, 2, 3) and spec.right == (0, 2, 1, 3)
    assert IdentitySpec.parse("medial") == spec
    with pytest.raises(InputError):
        IdentitySpec.parse("xy")
    with pytest.raises(InputError):
        IdentitySpec(1, (), (0,))


def test_satisfies_identity(rz2, lz2):
    assert satisfies_identity(rz2, IdentitySpec.parse("medial"))
    v = satisfies_identity(lz2, IdentitySpec.parse("left-commutative"))
    assert not v and v.witness == (0, 1, 0)
    for t in corpus(3):
        assert satisfies_identity(t, IdentitySpec.parse("x=x"))


def test_permutative_examples(rz2):
    for t in corpus_upto(3):
        if is_commutative(t):
            assert is_permutative(t, 2).witness == (2, (1, 0))
    v = is_permutative(rz2, 4)
    # xyz = yxz holds in a right-zero semigroup; the medial law x1 x3 x2 x4 also does
    assert v.witness == (3, (1, 0, 2))
    assert satisfies_identity(rz2, IdentitySpec.parse("medial"))


def test_some_order3_semigroup_is_not_permutative():
    bad = [t for t in corpus(3) if not is_permutative(t, 4)]
    assert bad
    # a non-commutative monoid satisfies no permutation identity: putting the
    # identity in all but an inverted pair of positions yields xy = yx
    lz2_one = adjoin_identity(catalog.left_zero()).table
    assert not is_permutative(lz2_one, 4)


def test_implication_ladder_order4():
    for t in corpus_upto(4):
        comm, med = is_commutative(t), bool(is_medial(t))
        perm = bool(is_permutative(t, 4))
        assert not comm or med
        assert not med or perm
        assert not is_left_commutative(t) or perm


def test_recognize_special(rz2, z4):
    assert recognize_special(rz2) == {"right_zero", "rectangular_band"}
    assert recognize_special(z4) == {"group", "cyclic_p_group", "commutative"}
    assert recognize_special(adjoin_zero(catalog.cyclic_group(2))) == {"group_with_zero", "commutative"}
    assert "cyclic_p_group" not in recognize_special(catalog.cyclic_group(6))
    assert "cyclic_p_group" not in recognize_special(catalog.klein_four())


def test_recognize_special_consistency():
    for t in corpus_upto(4):
        flags = recognize_special(t)
        if "right_zero" in flags and t.order == 2:
            assert "rectangular_band" in flags
        if "cyclic_p_group" in flags:
            assert "group" in flags

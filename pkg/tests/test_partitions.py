from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from catalan_fock.errors import DomainError, SizeGuardError
from catalan_fock.partitions import (
    GramMatrix,
    PairPartition,
    Signature,
    classify_signature,
    count_strata,
    enumerate_ncpp,
    enumerate_plus_signatures,
    enumerate_pp,
    enumerate_pp_eps,
    fiber_size,
    is_noncrossing,
    is_plus,
    k_class,
    ncpp_counterpart,
    suffix_law_holds,
    tau,
    wick_moment,
)


def pp(*pairs):
    return PairPartition.from_pairs(pairs)


def sig(text):
    return Signature.parse(text)


def test_pair_partition_validation():
    with pytest.raises(DomainError):
        pp((1, 2), (2, 3))
    with pytest.raises(DomainError):
        PairPartition(((2, 1),))
    with pytest.raises(DomainError):
        PairPartition(((3, 4), (1, 2)))
    assert pp((4, 3), (1, 2)).pairs == ((1, 2), (3, 4))
    assert str(pp((1, 4), (2, 3))) == "{(1,4),(2,3)}"


def test_json_round_trip():
    p = pp((1, 3), (2, 4))
    assert PairPartition.from_json(p.to_json()) == p
    assert p.to_json() == [[1, 3], [2, 4]]


def test_enumeration_counts_small():
    assert enumerate_pp(1) == [pp((1, 2))]
    assert len(enumerate_pp(2)) == 3
    assert len(enumerate_pp(3)) == 15
    assert [len(enumerate_ncpp(n)) for n in (1, 2, 3)] == [1, 2, 5]


def test_enumeration_order_is_canonical():
    assert enumerate_pp(2) == [pp((1, 2), (3, 4)), pp((1, 3), (2, 4)), pp((1, 4), (2, 3))]
    assert enumerate_pp(3) == sorted(enumerate_pp(3), key=lambda p: p.rights)


def test_noncrossing_predicate():
    assert is_noncrossing(pp((1, 4), (2, 3)))
    assert not is_noncrossing(pp((1, 3), (2, 4)))
    assert is_noncrossing(pp((1, 2), (3, 4)))


def test_pruned_ncpp_matches_filter():
    for n in range(1, 7):
        assert enumerate_ncpp(n) == [p for p in enumerate_pp(n) if is_noncrossing(p)]


def test_k_class_and_tau():
    assert k_class(pp((1, 2), (3, 4))) == 1
    assert k_class(pp((1, 3), (2, 4))) == 2
    assert k_class(pp((1, 6), (2, 5), (3, 4))) == 3
    assert tau(pp((1, 2))) == sig("-+")
    assert tau(pp((1, 3), (2, 4))) == sig("--++")
    assert tau(pp((1, 2), (3, 4))) == sig("-+-+")


def test_classify():
    assert classify_signature(sig("-+")).plus
    assert classify_signature(sig("-+")).k == 1
    assert not is_plus(sig("+-"))
    c = classify_signature(sig("--++"))
    assert c.plus and c.k == 2
    with pytest.raises(DomainError):
        classify_signature(sig("-++"))


def test_signature_parse_error_names_position():
    with pytest.raises(DomainError, match="position 3"):
        Signature.parse("--x+")


def test_plus_signatures():
    assert len(enumerate_plus_signatures(2)) == 2
    assert len(enumerate_plus_signatures(3)) == 5
    assert enumerate_plus_signatures(3, 3) == [sig("---+++")]


def test_fibers():
    assert set(enumerate_pp_eps(sig("--++"))) == {pp((1, 4), (2, 3)), pp((1, 3), (2, 4))}
    assert enumerate_pp_eps(sig("-+-+")) == [pp((1, 2), (3, 4))]
    assert len(enumerate_pp_eps(sig("---+++"))) == 6 == fiber_size(sig("---+++"))
    with pytest.raises(DomainError):
        enumerate_pp_eps(sig("+-"))


def test_counterparts():
    assert ncpp_counterpart(sig("--++")) == pp((1, 4), (2, 3))
    assert ncpp_counterpart(sig("-+-+")) == pp((1, 2), (3, 4))
    assert ncpp_counterpart(sig("---+++")) == pp((1, 6), (2, 5), (3, 4))


def test_wick_moments():
    g = GramMatrix.from_vectors([[1, 2], [0, 1], [3, -1], [Fraction(1, 2), 5]])
    expected = g(1, 4) * g(2, 3) + g(1, 3) * g(2, 4)
    assert wick_moment(sig("--++"), g, "boson") == expected
    assert wick_moment(sig("--++"), g, "free") == g(1, 4) * g(2, 3)
    assert wick_moment(sig("--++"), GramMatrix.ones(4), "boson") == 2
    assert wick_moment(sig("+-"), GramMatrix.ones(2), "boson") == 0
    assert wick_moment(sig("-+-+"), GramMatrix.ones(4), "free") == 1
    with pytest.raises(DomainError):
        wick_moment(sig("-+"), GramMatrix.ones(3), "free")


def test_strata_small():
    assert count_strata(3) == {1: (3, 2), 2: (6, 2), 3: (6, 1)}


def test_suffix_law_on_all_small_partitions():
    assert all(suffix_law_holds(p) for n in range(1, 6) for p in enumerate_pp(n))


def test_size_guards():
    with pytest.raises(SizeGuardError):
        enumerate_pp(8)
    with pytest.raises(SizeGuardError):
        enumerate_ncpp(9)


@lru_cache(maxsize=None)
def tau_images(n):
    return frozenset(tau(p) for p in enumerate_pp(n))


balanced_words = st.integers(1, 5).flatmap(lambda n: st.permutations([-1] * n + [1] * n))


@given(balanced_words)
def test_plus_iff_some_partition_maps_to_it(word):
    s = Signature(tuple(word))
    assert is_plus(s) == (s in tau_images(len(word) // 2))


def test_gram_matrix_checks_symmetry():
    with pytest.raises(DomainError):
        GramMatrix(((1, 2), (3, 1)))

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from catalan_fock import fock
from catalan_fock.errors import DomainError, SizeGuardError
from catalan_fock.exactalg import ONE_PLUS_Q, Q, ZERO, QPolynomial, qpoly_eval
from catalan_fock.fock import (
    FockState,
    OperatorWord,
    TestVector,
    apply_annihilation,
    apply_creation,
    deformed_inner,
    gram_moment,
    p_n,
    p_nk,
    signature_moment,
    vacuum_moment,
)
from catalan_fock.partitions import GramMatrix, Signature, enumerate_plus_signatures, wick_moment

E1, E2 = TestVector.basis(0, 2), TestVector.basis(1, 2)
F = fock.UNIT


def rand_vector(rng, dim=3):
    return TestVector(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(dim)))


def dot(f, g):
    return sum((a * b for a, b in zip(f.coords, g.coords)), Fraction(0))


def moment_at_1(signs, vectors):
    word = OperatorWord.from_signature(Signature.parse(signs), vectors)
    return qpoly_eval(vacuum_moment(word), 1)


def test_two_particle_inner_products():
    ff = FockState.tensor(F, F)
    assert deformed_inner(ff, ff, 2) == ONE_PLUS_Q
    e12, e21 = FockState.tensor(E1, E2), FockState.tensor(E2, E1)
    assert deformed_inner(e12, e12, 2) == 1
    assert deformed_inner(e12, e21, 2) == Q


def test_inner_product_sector_mismatch():
    with pytest.raises(DomainError):
        deformed_inner(FockState.tensor(E1), FockState.tensor(E1, E2), 2)


def test_creation():
    assert apply_creation(F, FockState.vacuum()) == FockState.from_vector(F)
    assert apply_creation(E1, FockState.from_vector(E2)) == FockState.tensor(E1, E2)
    state = FockState.from_vector(E1) + FockState.from_vector(E2) * 3
    assert apply_creation(E1, state) == FockState.tensor(E1, E1) + FockState.tensor(E1, E2) * 3


def test_annihilation():
    assert apply_annihilation(F, FockState.vacuum()).is_zero()
    assert apply_annihilation(F, FockState.tensor(F, F)) == FockState.from_vector(F) * ONE_PLUS_Q
    e = TestVector.basis(0, 2)
    assert apply_annihilation(e, FockState.tensor(E2, E1, E2)).is_zero()
    assert apply_annihilation(E1, FockState.tensor(E2, E1)) == FockState.from_vector(E2) * Q


def test_metric_realizes_a_gram_matrix():
    gram = GramMatrix(((2, 1), (1, 3)))
    state = FockState.tensor(E1, E2)
    assert deformed_inner(state, state, 2, metric=gram) == QPolynomial([6, 1])


def test_unit_vector_moments():
    assert signature_moment(Signature.parse("-+")) == 1
    assert signature_moment(Signature.parse("--++")) == ONE_PLUS_Q
    assert signature_moment(Signature.parse("+-")) == ZERO


def test_worked_moments_at_q1():
    rng = random.Random(5)
    for _ in range(5):
        f = [rand_vector(rng) for _ in range(6)]
        assert moment_at_1("-+", f[:2]) == dot(f[0], f[1])
        assert moment_at_1("-+-+", f[:4]) == dot(f[0], f[1]) * dot(f[2], f[3])
        assert moment_at_1("--++", f[:4]) == dot(f[0], f[3]) * dot(f[1], f[2]) + dot(f[0], f[2]) * dot(f[1], f[3])
        expected = dot(f[2], f[3]) * (dot(f[0], f[5]) * dot(f[1], f[4]) + dot(f[0], f[4]) * dot(f[1], f[5]))
        assert moment_at_1("---+++", f) == expected


def test_gram_moment_matches_boson_wick_at_q1_for_small_n():
    # the (q,2) rule only deviates from the bosonic one from n = 3 on
    rng = random.Random(11)
    for n in (1, 2):
        for s in enumerate_plus_signatures(n):
            gram = GramMatrix.from_vectors([rand_vector(rng).coords for _ in range(2 * n)])
            assert qpoly_eval(gram_moment(s, gram), 1) == wick_moment(s, gram, "boson")


def test_gram_moment_at_q0_is_free_wick():
    rng = random.Random(3)
    for n in (1, 2, 3):
        for s in enumerate_plus_signatures(n):
            gram = GramMatrix.from_vectors([rand_vector(rng).coords for _ in range(2 * n)])
            assert qpoly_eval(gram_moment(s, gram), 0) == wick_moment(s, gram, "free")


def test_p_values():
    assert p_nk(1, 1) == 1
    assert p_nk(2, 1) == 1
    assert p_nk(2, 2) == ONE_PLUS_Q
    assert p_nk(3, 2) == QPolynomial([2, 3, 1])
    assert p_n(2) == 2 + Q
    assert p_n(3) == QPolynomial([5, 5, 1])


def test_p_values_at_q1():
    assert [qpoly_eval(p_n(n), 1) for n in range(1, 8)] == [1, 3, 11, 43, 173, 707, 2917]


def test_p_guards():
    with pytest.raises(DomainError):
        p_nk(3, 4)
    with pytest.raises(SizeGuardError):
        p_n(8)


def test_operator_word_validation():
    with pytest.raises(DomainError):
        OperatorWord(())
    with pytest.raises(DomainError):
        OperatorWord.from_signature(Signature.parse("-+"), [F])


def test_state_arithmetic_drops_zeros():
    s = FockState.from_vector(E1)
    assert (s - s).is_zero()
    assert (s * 0).is_zero()
    assert len(s + FockState.from_vector(E2)) == 2


def test_embedding_and_sandwich():
    report = fock.verify_cts_embedding(4)
    assert report.ok, report.text()
    for n in (3, 4):
        assert fock.verify_sandwich(n).ok

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from catalan_fock.errors import DomainError, SizeGuardError
from catalan_fock.trapezoid import (
    TrapezoidQuery,
    ballot_count_oracle,
    catalan_number,
    catalan_triangle,
    shapiro_triangle,
    trapezoid,
    trapezoid_rows,
    triangle_rows,
    verify_trapezoid_identities,
)


def test_catalan_numbers():
    assert [catalan_number(n) for n in range(11)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]


def test_catalan_triangle_values():
    assert catalan_triangle(3, 2) == 5
    for n in range(11):
        assert catalan_triangle(n, 0) == 1
        assert catalan_triangle(n, n) == catalan_number(n)
    assert triangle_rows(4) == [[1], [1, 1], [1, 2, 2], [1, 3, 5, 5]]
    with pytest.raises(DomainError):
        catalan_triangle(2, 3)


def test_shapiro_triangle():
    assert shapiro_triangle(1, 1) == 1
    assert shapiro_triangle(2, 1) == 2
    assert all(shapiro_triangle(n, n) == 1 for n in range(1, 9))
    with pytest.raises(DomainError):
        shapiro_triangle(2, 0)


def test_trapezoid_worked_values():
    assert trapezoid(3, 1, 3) == 3
    assert trapezoid(2, 2, 3) == 5 == catalan_number(3)
    assert trapezoid(1, 1, 3) == 0
    assert trapezoid(TrapezoidQuery(3, 1, 3)) == 3
    for m in range(1, 6):
        for h in range(m):
            assert trapezoid(m, 0, h) == 1


def test_ballot_oracle_small_cases():
    assert ballot_count_oracle(1, 1, 1) == 1
    assert ballot_count_oracle(2, 1, 2) == 2
    assert ballot_count_oracle(3, 4, 0) == 1


def test_oracle_size_guard():
    with pytest.raises(SizeGuardError):
        ballot_count_oracle(1, 20, 10)


def test_trapezoid_rows_shape():
    rows = trapezoid_rows(2, 3)
    assert [len(r) for r in rows] == [2, 3, 4]
    assert rows[0] == [1, 1]
    assert trapezoid_rows(1, 5) == triangle_rows(5)


@given(st.integers(1, 4), st.integers(0, 7), st.data())
def test_closed_form_matches_oracle(m, n, data):
    k = data.draw(st.integers(0, n + m - 1))
    assert trapezoid(m, n, k) == ballot_count_oracle(m, n, k)


def test_identity_report_small():
    report = verify_trapezoid_identities(4, 6)
    assert report.ok, report.text()
    assert len(report.checks) == 3


def test_query_validation():
    with pytest.raises(DomainError):
        TrapezoidQuery(0, 1, 1)
    with pytest.raises(DomainError):
        TrapezoidQuery(1, -1, 0)

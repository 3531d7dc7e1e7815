"""Catalan numbers, Catalan's triangles and Catalan's trapezoids."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError, Report, SizeGuardError, Tally
from .exactalg import binomial

BALLOT_ORACLE_LIMIT = 24


@dataclass(frozen=True)
class TrapezoidQuery:
    m: int
    n: int
    k: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"trapezoid order must be >= 1, got {self.m}")
        if self.n < 0 or self.k < 0:
            raise DomainError(f"n and k must be nonnegative, got n={self.n}, k={self.k}")


def catalan_number(n: int) -> int:
    if n < 0:
        raise DomainError(f"catalan_number needs n >= 0, got {n}")
    return binomial(2 * n, n) // (n + 1)


def catalan_triangle(n: int, k: int) -> int:
    """C(n, k) = (n+1-k)/(n+1) * binom(n+k, k) for 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"catalan_triangle needs 0 <= k <= n, got n={n}, k={k}")
    num = (n + 1 - k) * binomial(n + k, k)
    value, rem = divmod(num, n + 1)
    assert rem == 0
    return value


def shapiro_triangle(n: int, k: int) -> int:
    """B(n, k) = k/n * binom(2n, n-k), defined here for 1 <= k <= n."""
    if n < 1 or k < 1 or k > n:
        raise DomainError(f"shapiro_triangle needs 1 <= k <= n, got n={n}, k={k}")
    value, rem = divmod(k * binomial(2 * n, n - k), n)
    assert rem == 0
    return value


def trapezoid(m: int | TrapezoidQuery, n: int | None = None, k: int | None = None) -> int:
    """C_m(n, k), extended by zero for k > n + m - 1.

    Accepts either a :class:`TrapezoidQuery` or the three integers.
    """
    query = m if isinstance(m, TrapezoidQuery) else TrapezoidQuery(m, n, k)
    m, n, k = query.m, query.n, query.k
    if k <= m - 1:
        return binomial(n + k, k)
    if k <= n + m - 1:
        return binomial(n + k, k) - binomial(n + k, k - m)
    return 0


def ballot_count_oracle(m: int | TrapezoidQuery, n: int | None = None, k: int | None = None) -> int:
    """Count strings of n X's and k Y's whose every prefix has #Y - #X <= m - 1.

    Brute force over all placements of the Y's; independent of the closed form.
    """
    query = m if isinstance(m, TrapezoidQuery) else TrapezoidQuery(m, n, k)
    m, n, k = query.m, query.n, query.k
    if n + k > BALLOT_ORACLE_LIMIT:
        raise SizeGuardError(f"ballot oracle: n+k={n + k} exceeds {BALLOT_ORACLE_LIMIT}")
    length = n + k
    count = 0
    for ys in combinations(range(length), k):
        ys = set(ys)
        excess = 0
        for pos in range(length):
            excess += 1 if pos in ys else -1
            if excess > m - 1:
                break
        else:
            count += 1
    return count


def verify_trapezoid_identities(max_m: int, max_k: int) -> Report:
    """Check the trapezoid identities over the given ranges.

    * ``catalan-trapezoid-coincidences``:
      C_1(n+1,n+1) = C_1(n+1,n) = C_{n+1} = C_2(n,n+1) for 0 <= n <= max_k
    * ``three-order-sum``:
      C_m(k,k+m-1) + C_{m-2}(k+1,k+m-2) = C_{m-1}(k+1,k+m-1), 3 <= m <= max_m
    * ``diagonal-convolution``:
      sum_j C_{j+m-1}(k-j,k+m-2) = C_m(k,k+m-1), 2 <= m <= max_m
    """
    if max_m < 3 or max_k < 1:
        raise DomainError("verify_trapezoid_identities needs max_m >= 3 and max_k >= 1")
    report = Report()

    t = Tally("catalan-trapezoid-coincidences")
    for n in range(max_k + 1):
        values = (trapezoid(1, n + 1, n + 1), trapezoid(1, n + 1, n), catalan_number(n + 1), trapezoid(2, n, n + 1))
        t.expect(len(set(values)) == 1, f"n={n}: {values}")
    report.add(t.result())

    t = Tally("three-order-sum")
    for m in range(3, max_m + 1):
        for k in range(max_k + 1):
            lhs = trapezoid(m, k, k + m - 1) + trapezoid(m - 2, k + 1, k + m - 2)
            rhs = trapezoid(m - 1, k + 1, k + m - 1)
            t.expect(lhs == rhs, f"m={m}, k={k}: {lhs} != {rhs}")
    report.add(t.result())

    t = Tally("diagonal-convolution")
    for m in range(2, max_m + 1):
        for k in range(max_k + 1):
            lhs = sum(trapezoid(j + m - 1, k - j, k + m - 2) for j in range(k + 1))
            rhs = trapezoid(m, k, k + m - 1)
            t.expect(lhs == rhs, f"m={m}, k={k}: {lhs} != {rhs}")
    report.add(t.result())
    return report


def trapezoid_rows(m: int, rows: int) -> list[list[int]]:
    """Rows n = 0..rows-1 of the order-m trapezoid, k = 0..n+m-1."""
    return [[trapezoid(m, n, k) for k in range(n + m)] for n in range(rows)]


def triangle_rows(rows: int) -> list[list[int]]:
    return [[catalan_triangle(n, k) for k in range(n + 1)] for n in range(rows)]

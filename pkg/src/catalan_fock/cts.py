"""The Catalan's triangle system x_{n+1,k+1} = sum_{j=k}^{n} x_{n,j}.

A table is fixed by its first column x_{n,1} = b_n. Two independent solvers
are provided: the forward recurrence and the closed form whose coefficients
are Catalan trapezoid numbers. Entries may be Fractions or QPolynomials; the
solvers only use ``+``, ``*`` by an integer, and ``==``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import Check, DomainError, Report, Tally
from .exactalg import ring_to_json
from .trapezoid import catalan_number, catalan_triangle, trapezoid


def _zero_like(x):
    return x * 0


@dataclass(frozen=True)
class TriangleTable:
    """Ragged rows; ``rows[n-1][m-1]`` holds x_{n,m}."""

    rows: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        for i, row in enumerate(rows, start=1):
            if len(row) != i:
                raise DomainError(f"row {i} has {len(row)} entries, expected {i}")
        object.__setattr__(self, "rows", rows)

    @property
    def depth(self) -> int:
        return len(self.rows)

    def x(self, n: int, m: int):
        if not 1 <= m <= n <= self.depth:
            raise IndexError(f"x_{{{n},{m}}} outside a table of depth {self.depth}")
        return self.rows[n - 1][m - 1]

    def entries(self):
        for n, row in enumerate(self.rows, start=1):
            for m, value in enumerate(row, start=1):
                yield n, m, value

    def first_mismatch(self, other: TriangleTable) -> tuple[int, int] | None:
        if self.depth != other.depth:
            return (min(self.depth, other.depth) + 1, 1)
        for n, m, value in self.entries():
            if value != other.x(n, m):
                return (n, m)
        return None

    def to_json(self) -> list[list]:
        return [[ring_to_json(v) for v in row] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "value"])
        for n, m, value in self.entries():
            w.writerow([n, m, str(value)])
        return buf.getvalue()


def _check_depth(b: Sequence, depth: int | None) -> int:
    if not b:
        raise DomainError("boundary sequence must be nonempty")
    if depth is None:
        return len(b)
    if depth < 1:
        raise DomainError(f"table depth must be >= 1, got {depth}")
    if depth > len(b):
        raise DomainError(f"boundary has {len(b)} entries but depth {depth} was requested")
    return depth


def solve_recurrence(b: Sequence, depth: int | None = None) -> TriangleTable:
    """Fill the table row by row from the boundary column."""
    depth = _check_depth(b, depth)
    rows = [(b[0],)]
    for n in range(1, depth):
        prev = rows[-1]
        # suffix sums of the previous row give x_{n+1,k+1} for k = n..1
        suffix = []
        acc = _zero_like(b[0])
        for v in reversed(prev):
            acc = acc + v
            suffix.append(acc)
        suffix.reverse()
        rows.append((b[n],) + tuple(suffix))
    return TriangleTable(tuple(rows))


def closed_form_entry(b: Sequence, n: int, m: int):
    """x_{n,m} = sum_{h=0}^{n-m} C_{m-1}(h, h+m-2) * b_{n-m-h+1} for 2 <= m <= n."""
    acc = _zero_like(b[0])
    for h in range(n - m + 1):
        acc = acc + trapezoid(m - 1, h, h + m - 2) * b[n - m - h]
    return acc


def solve_closed_form(b: Sequence, depth: int | None = None) -> TriangleTable:
    depth = _check_depth(b, depth)
    rows = []
    for n in range(1, depth + 1):
        rows.append((b[n - 1],) + tuple(closed_form_entry(b, n, m) for m in range(2, n + 1)))
    return TriangleTable(tuple(rows))


def check_equivalence(b: Sequence, depth: int | None = None) -> Check:
    """Both solvers must agree entrywise."""
    rec = solve_recurrence(b, depth)
    closed = solve_closed_form(b, depth)
    where = rec.first_mismatch(closed)
    cases = sum(1 for _ in rec.entries())
    if where is None:
        return Check("recurrence-vs-closed-form", True, cases)
    n, m = where
    return Check(
        "recurrence-vs-closed-form",
        False,
        cases,
        f"x_{{{n},{m}}}: recurrence {rec.x(n, m)} != closed form {closed.x(n, m)}",
    )


def catalan_boundary(depth: int) -> list[int]:
    """b_1 = 1, b_n = C_{n-1}."""
    return [1] + [catalan_number(n - 1) for n in range(2, depth + 1)]


def catalan_boundary_table(depth: int) -> tuple[TriangleTable, Report]:
    """Solve with the Catalan boundary and check it against C(n-1, n-m)."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    table = solve_closed_form(catalan_boundary(depth))
    report = Report()

    t = Tally("catalan-boundary-matches-triangle")
    for n, m, value in table.entries():
        t.expect(value == catalan_triangle(n - 1, n - m), f"x_{{{n},{m}}}={value}")
    report.add(t.result())

    t = Tally("catalan-boundary-top-diagonal-is-one")
    for n in range(1, depth + 1):
        t.expect(table.x(n, n) == 1, f"x_{{{n},{n}}}={table.x(n, n)}")
    report.add(t.result())

    t = Tally("catalan-boundary-second-column")
    for n in range(2, depth + 1):
        t.expect(table.x(n, 2) == table.x(n, 1) == catalan_number(n - 1), f"n={n}")
    report.add(t.result())
    return table, report

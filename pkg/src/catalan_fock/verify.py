"""Invariant suites behind ``catalan-fock verify``.

Every suite is deterministic: random inputs come from fixed seeds, and the
report lists checks in a fixed order so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from . import cts, fock, partitions, trapezoid
from .errors import Report, Tally
from .exactalg import ONE_PLUS_Q, ZERO, QPolynomial, binomial, qpoly_eval, semifactorial
from .partitions import GramMatrix, PairPartition, Signature

SUITES = ("trapezoid", "partitions", "cts", "fock")


def _cap(bound: int, max_n: int | None) -> int:
    return bound if max_n is None else min(bound, max_n)


def random_rational(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_qpoly(rng: random.Random, degree: int = 2) -> QPolynomial:
    return QPolynomial(random_rational(rng) for _ in range(degree + 1))


def random_vector(rng: random.Random, dim: int) -> fock.TestVector:
    while True:
        v = fock.TestVector(tuple(random_rational(rng, 3) for _ in range(dim)))
        if any(v.coords):
            return v


def random_state(rng: random.Random, sector: int, dim: int, terms: int = 3) -> fock.FockState:
    words = [tuple(rng.randrange(dim) for _ in range(sector)) for _ in range(terms)]
    return fock.FockState([(w, random_qpoly(rng, 1)) for w in words])


def trapezoid_suite(max_n: int | None = None) -> Report:
    report = Report()
    n_max = _cap(8, max_n)

    t = Tally("pascal-rule")
    for n in range(1, 31):
        for k in range(1, n + 1):
            t.expect(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k), f"({n},{k})")
    report.add(t.result())

    t = Tally("trapezoid-vs-ballot-oracle")
    for m in range(1, 5):
        for n in range(n_max + 1):
            for k in range(n + m):
                t.expect(trapezoid.trapezoid(m, n, k) == trapezoid.ballot_count_oracle(m, n, k), f"(m={m},n={n},k={k})")
    report.add(t.result())

    t = Tally("order-one-trapezoid-is-triangle")
    for n in range(_cap(10, max_n) + 1):
        for k in range(n + 1):
            t.expect(trapezoid.trapezoid(1, n, k) == trapezoid.catalan_triangle(n, k), f"({n},{k})")
    report.add(t.result())

    t = Tally("triangle-row-sums")
    for n in range(1, _cap(9, max_n) + 1):
        for k in range(n):
            lhs = sum(trapezoid.catalan_triangle(n - 1, h) for h in range(k + 1))
            t.expect(lhs == trapezoid.catalan_triangle(n, k), f"({n},{k})")
    report.add(t.result())

    t = Tally("triangle-diagonal-is-catalan")
    for n in range(_cap(10, max_n) + 1):
        t.expect(trapezoid.catalan_triangle(n, n) == trapezoid.catalan_number(n), f"n={n}")
        t.expect(trapezoid.catalan_triangle(n, 0) == 1, f"n={n}")
    report.add(t.result())

    report.extend(trapezoid.verify_trapezoid_identities(5, n_max))
    return report


def partitions_suite(max_n: int | None = None) -> Report:
    report = Report()
    n6, n7, n5 = _cap(6, max_n), _cap(7, max_n), _cap(5, max_n)

    t = Tally("pp-count-semifactorial")
    for n in range(1, n6 + 1):
        t.expect(len(partitions.enumerate_pp(n)) == semifactorial(n), f"n={n}")
    report.add(t.result())

    t = Tally("ncpp-count-catalan")
    for n in range(1, n7 + 1):
        t.expect(len(partitions.enumerate_ncpp(n)) == trapezoid.catalan_number(n), f"n={n}")
    report.add(t.result())

    t = Tally("ncpp-equals-filtered-pp")
    for n in range(1, n6 + 1):
        filtered = [p for p in partitions.enumerate_pp(n) if partitions.is_noncrossing(p)]
        t.expect(filtered == partitions.enumerate_ncpp(n), f"n={n}")
    report.add(t.result())

    t = Tally("suffix-count-laws")
    for n in range(1, n6 + 1):
        for p in partitions.enumerate_pp(n):
            t.expect(partitions.suffix_law_holds(p), str(p))
    report.add(t.result())

    t = Tally("tau-image-and-bijection")
    for n in range(1, n6 + 1):
        for p in partitions.enumerate_pp(n):
            t.expect(partitions.is_plus(partitions.tau(p)), str(p))
        images = [partitions.tau(p) for p in partitions.enumerate_ncpp(n)]
        t.expect(sorted(images, key=lambda s: s.word) == partitions.enumerate_plus_signatures(n), f"n={n}")
    report.add(t.result())

    t = Tally("fiber-law")
    for n in range(1, n5 + 1):
        for s in partitions.enumerate_plus_signatures(n):
            fiber = partitions.enumerate_pp_eps(s)
            t.expect(len(fiber) == partitions.fiber_size(s), str(s))
            nc = [p for p in fiber if partitions.is_noncrossing(p)]
            t.expect(nc == [partitions.ncpp_counterpart(s)], str(s))
    report.add(t.result())

    t = Tally("stratum-counts")
    for n in range(1, n7 + 1):
        strata = partitions.count_strata(n)
        for k, (pp_k, ncpp_k) in strata.items():
            t.expect(ncpp_k * n == k * binomial(2 * n - k - 1, n - 1), f"n={n},k={k}")
            t.expect(ncpp_k == trapezoid.catalan_triangle(n - 1, n - k), f"n={n},k={k}")
        t.expect(sum(c for _, c in strata.values()) == trapezoid.catalan_number(n), f"n={n}")
        t.expect(strata[n][0] == math.factorial(n) and strata[n][1] == 1, f"n={n}")
        t.expect(strata[1][1] == trapezoid.catalan_number(n - 1), f"n={n}")
        if n >= 2:
            t.expect(strata[1][0] == semifactorial(n - 1), f"n={n}")
            t.expect(strata[n - 1][1] == n - 1, f"n={n}")
        if n >= 3:
            prev = partitions.count_strata(n - 1)
            t.expect(strata[2][1] == strata[1][1], f"n={n}")
            for k in range(2, n):
                t.expect(strata[k][1] == sum(prev[h][1] for h in range(k - 1, n)), f"n={n},k={k}")
    report.add(t.result())

    t = Tally("restriction-closure")
    for n in range(1, n5 + 1):
        for p in partitions.enumerate_ncpp(n):
            for size in range(1, n + 1):
                for sub in combinations(p.pairs, size):
                    t.expect(partitions.is_noncrossing(PairPartition.from_ordered_set(sub)), f"{p} -> {sub}")
    report.add(t.result())

    t = Tally("wick-moments-with-all-ones-gram")
    for n in range(1, n5 + 1):
        gram = GramMatrix.ones(2 * n)
        for s in partitions.enumerate_plus_signatures(n):
            t.expect(partitions.wick_moment(s, gram, "boson") == partitions.fiber_size(s), str(s))
            t.expect(partitions.wick_moment(s, gram, "free") == 1, str(s))
    report.add(t.result())
    return report


def cts_suite(max_n: int | None = None) -> Report:
    rng = random.Random(20240101)
    report = Report()
    depth_r, depth_q = _cap(10, max_n), _cap(8, max_n)

    t = Tally("solvers-agree-rational")
    for _ in range(100):
        b = [random_rational(rng) for _ in range(depth_r)]
        check = cts.check_equivalence(b)
        t.expect(check.ok, check.detail)
    report.add(t.result())

    t = Tally("solvers-agree-qpoly")
    for _ in range(50):
        b = [random_qpoly(rng) for _ in range(depth_q)]
        check = cts.check_equivalence(b)
        t.expect(check.ok, check.detail)
    report.add(t.result())

    t = Tally("zero-boundary-rigidity")
    for solve in (cts.solve_recurrence, cts.solve_closed_form):
        table = solve([Fraction(0)] * depth_r)
        t.expect(all(v == 0 for _, _, v in table.entries()), solve.__name__)
    report.add(t.result())

    t = Tally("linearity")
    for _ in range(20):
        b1 = [random_rational(rng) for _ in range(depth_r)]
        b2 = [random_rational(rng) for _ in range(depth_r)]
        c = random_rational(rng)
        s1, s2 = cts.solve_closed_form(b1), cts.solve_closed_form(b2)
        s12 = cts.solve_closed_form([x + y for x, y in zip(b1, b2)])
        sc = cts.solve_closed_form([c * x for x in b1])
        for n, m, v in s12.entries():
            t.expect(v == s1.x(n, m) + s2.x(n, m), f"sum at ({n},{m})")
            t.expect(sc.x(n, m) == c * s1.x(n, m), f"scale at ({n},{m})")
    report.add(t.result())

    t = Tally("column-laws")
    for _ in range(20):
        b = [random_rational(rng) for _ in range(depth_r)]
        table = cts.solve_recurrence(b)
        for n in range(1, depth_r + 1):
            t.expect(table.x(n, n) == b[0], f"top diagonal n={n}")
        for n in range(3, depth_r + 1):
            second = sum(trapezoid.catalan_number(k) * b[n - k - 2] for k in range(n - 1))
            t.expect(table.x(n, 2) == second, f"second column n={n}")
            third = sum(trapezoid.trapezoid(2, h, h + 1) * b[n - h - 3] for h in range(n - 2))
            t.expect(table.x(n, 3) == third, f"third column n={n}")
    report.add(t.result())

    _, catalan_report = cts.catalan_boundary_table(_cap(8, max_n))
    report.extend(catalan_report)

    t = Tally("catalan-instance-counts-ncpp-strata")
    table, _ = cts.catalan_boundary_table(_cap(7, max_n))
    for n in range(1, table.depth + 1):
        strata = partitions.count_strata(n)
        for k in range(1, n + 1):
            t.expect(table.x(n, k) == strata[k][1], f"n={n},k={k}")
    report.add(t.result())
    return report


def fock_suite(max_n: int | None = None) -> Report:
    rng = random.Random(777)
    report = Report()
    n4, n5, n6 = _cap(4, max_n), _cap(5, max_n), _cap(6, max_n)

    t = Tally("adjointness")
    for case in range(200):
        sector = case % (n4 + 1)
        dim = 1 + case % 3
        f = random_vector(rng, dim)
        F = random_state(rng, sector, dim)
        G = random_state(rng, sector + 1, dim)
        lhs = fock.deformed_inner(fock.apply_creation(f, F), G, sector + 1)
        rhs = fock.deformed_inner(F, fock.apply_annihilation(f, G), sector)
        t.expect(lhs == rhs, f"case {case}")
    report.add(t.result())

    t = Tally("sector-shift")
    for sector in range(n4 + 1):
        f = random_vector(rng, 2)
        F = random_state(rng, sector, 2)
        up, down = fock.apply_creation(f, F), fock.apply_annihilation(f, F)
        t.expect(up.sectors() <= {sector + 1}, f"creation from {sector}")
        t.expect(down.sectors() <= ({sector - 1} if sector else set()), f"annihilation from {sector}")
    t.expect(fock.apply_annihilation(random_vector(rng, 2), fock.FockState.vacuum()).is_zero(), "vacuum")
    report.add(t.result())

    t = Tally("norm-identities")
    for sector in range(2, n4 + 1):
        f = random_vector(rng, 2)
        F = random_state(rng, sector, 2).sector(sector)
        lhs = fock.deformed_inner(fock.apply_creation(f, F), fock.apply_creation(f, F), sector + 1)
        ff = fock.deformed_inner(fock.FockState.from_vector(f), fock.FockState.from_vector(f), 1)
        t.expect(lhs == ff * fock.deformed_inner(F, F, sector), f"sector {sector}")
    for _ in range(10):
        f, g = random_vector(rng, 2), random_vector(rng, 2)
        fg = fock.FockState.tensor(f, g)
        expected = _dot(f, f) * _dot(g, g) + fock.Q * _dot(f, g) ** 2
        t.expect(fock.deformed_inner(fg, fg, 2) == expected, "two-particle")
    report.add(t.result())

    t = Tally("two-particle-positivity")
    for _ in range(50):
        F = fock.FockState([(tuple(rng.randrange(3) for _ in range(2)), random_rational(rng)) for _ in range(4)])
        norm = fock.deformed_inner(F, F, 2)
        t.expect(qpoly_eval(norm, -1) >= 0 and qpoly_eval(norm, 1) >= 0, repr(F))
    report.add(t.result())

    t = Tally("free-reduction-at-q0")
    for n in range(1, n4 + 1):
        for s in partitions.enumerate_plus_signatures(n):
            vectors = [random_vector(rng, 2) for _ in range(2 * n)]
            moment = fock.vacuum_moment(fock.OperatorWord.from_signature(s, vectors))
            gram = GramMatrix.from_vectors([v.coords for v in vectors])
            t.expect(qpoly_eval(moment, 0) == partitions.wick_moment(s, gram, "free"), str(s))
    report.add(t.result())

    t = Tally("moment-vanishing")
    unit = fock.UNIT
    for length in range(1, 2 * n4 + 2):
        for bits in range(2 ** length):
            word = tuple(1 if bits >> i & 1 else -1 for i in range(length))
            if length % 2 == 0 and partitions.is_plus(Signature(word)):
                continue
            moment = fock.vacuum_moment(fock.OperatorWord.from_signature(Signature(word), unit))
            t.expect(moment.is_zero(), str(Signature(word)))
    report.add(t.result())

    t = Tally("stratum-recurrences")
    for n in range(1, n5 + 1):
        t.expect(fock.p_nk(n + 1, 1) == fock.p_n(n), f"P_{{{n + 1},1}}")
        t.expect(fock.p_nk(n + 1, 2) == ONE_PLUS_Q * fock.p_n(n), f"P_{{{n + 1},2}}")
        t.expect(fock.p_nk(n + 1, n + 1) == ONE_PLUS_Q, f"P_{{{n + 1},{n + 1}}}")
        for k in range(2, n + 1):
            rhs = ZERO
            for h in range(k, n + 1):
                rhs = rhs + fock.p_nk(n, h)
            t.expect(fock.p_nk(n + 1, k + 1) == rhs, f"P_{{{n + 1},{k + 1}}}")
    report.add(t.result())

    t = Tally("q0-specialization")
    for n in range(1, n6 + 1):
        t.expect(qpoly_eval(fock.p_n(n), 0) == trapezoid.catalan_number(n), f"P_{n}")
        for k in range(1, n + 1):
            t.expect(qpoly_eval(fock.p_nk(n, k), 0) == trapezoid.catalan_triangle(n - 1, n - k), f"P_{{{n},{k}}}")
    report.add(t.result())

    report.extend(fock.verify_cts_embedding(n5))
    for n in range(3, n6 + 1):
        report.add(fock.verify_sandwich(n))
    return report


def _dot(f: fock.TestVector, g: fock.TestVector) -> Fraction:
    return sum((x * y for x, y in zip(f.coords, g.coords)), Fraction(0))


SUITE_FUNCS = {
    "trapezoid": trapezoid_suite,
    "partitions": partitions_suite,
    "cts": cts_suite,
    "fock": fock_suite,
}


def run_suite(name: str, max_n: int | None = None) -> dict[str, Report]:
    names = SUITES if name == "all" else (name,)
    return {s: SUITE_FUNCS[s](max_n) for s in names}

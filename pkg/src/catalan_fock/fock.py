"""Symbolic simulator for the (q,2)-Fock space.

States are finite sums of basis tensors e_{i_1} x ... x e_{i_n} with
amplitudes in Q[q]. The n-particle inner product is the tensor one composed
with lambda_n, which acts as ``1 + q * swap`` on the last two slots only.
Nothing is quotiented or completed; the semi-inner product is used as is.

By default the one-particle basis is orthonormal. Passing ``metric`` (a
Gram matrix of the basis vectors) lets basis vector j stand for an arbitrary
f_j with prescribed inner products, which keeps everything rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .cts import TriangleTable, solve_closed_form
from .errors import Check, DomainError, Report, Tally, guard
from .exactalg import ONE, ONE_PLUS_Q, Q, ZERO, QPolynomial, qpoly_eval, semifactorial
from .partitions import GramMatrix, Signature, enumerate_plus_signatures
from .trapezoid import catalan_number

CREATION = 1
ANNIHILATION = -1
P_LIMIT = 7

Word = tuple[int, ...]


@dataclass(frozen=True)
class TestVector:
    """Rational coordinates of a one-particle vector."""

    __test__ = False  # keep pytest from collecting this class

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def basis(cls, i: int, dim: int) -> TestVector:
        """The 0-based i-th basis vector of a dim-dimensional space."""
        return cls(tuple(int(j == i) for j in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def pairing(self, i: int, metric: GramMatrix | None) -> Fraction:
        """<self, e_i>."""
        if metric is None:
            return self.coords[i] if i < len(self.coords) else Fraction(0)
        return sum((c * metric.rows[j][i] for j, c in enumerate(self.coords) if c), Fraction(0))


class FockState:
    """Immutable finite sum word -> amplitude; zero amplitudes are never stored."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Mapping[Word, QPolynomial | Fraction | int] | Iterable = ()):
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        acc: dict[Word, QPolynomial] = {}
        for word, amp in items:
            word = tuple(int(i) for i in word)
            acc[word] = acc.get(word, ZERO) + QPolynomial.coerce(amp)
        self._amps = {w: a for w, a in acc.items() if a}

    @classmethod
    def vacuum(cls) -> FockState:
        return cls({(): ONE})

    @classmethod
    def from_vector(cls, f: TestVector) -> FockState:
        return cls({(i,): c for i, c in enumerate(f.coords) if c})

    @classmethod
    def tensor(cls, *vectors: TestVector) -> FockState:
        """The product state f_1 x ... x f_n."""
        state = cls.vacuum()
        for f in reversed(vectors):
            state = apply_creation(f, state)
        return state

    @property
    def amplitudes(self) -> Mapping[Word, QPolynomial]:
        return dict(self._amps)

    def amplitude(self, word: Word) -> QPolynomial:
        return self._amps.get(tuple(word), ZERO)

    def sectors(self) -> set[int]:
        return {len(w) for w in self._amps}

    def sector(self, n: int) -> FockState:
        return FockState({w: a for w, a in self._amps.items() if len(w) == n})

    def is_zero(self) -> bool:
        return not self._amps

    def items(self):
        return self._amps.items()

    def __len__(self) -> int:
        return len(self._amps)

    def __add__(self, other: FockState) -> FockState:
        return FockState(list(self._amps.items()) + list(other._amps.items()))

    def __sub__(self, other: FockState) -> FockState:
        return self + other * -1

    def __mul__(self, c) -> FockState:
        return FockState({w: a * c for w, a in self._amps.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self._amps == other._amps

    def __hash__(self) -> int:
        return hash(frozenset(self._amps.items()))

    def __repr__(self) -> str:
        terms = ", ".join(f"{w}: {a}" for w, a in sorted(self._amps.items()))
        return f"FockState({{{terms}}})"


@dataclass(frozen=True)
class OperatorWord:
    """A product A^{e(1)}(f_1) ... A^{e(m)}(f_m), written left to right."""

    letters: tuple[tuple[int, TestVector], ...]

    def __post_init__(self):
        if not self.letters:
            raise DomainError("an operator word needs at least one letter")
        for sign, _ in self.letters:
            if sign not in (CREATION, ANNIHILATION):
                raise DomainError(f"letter sign must be +1 (creation) or -1 (annihilation), got {sign}")

    @classmethod
    def from_signature(cls, s: Signature, vectors: Sequence[TestVector] | TestVector) -> OperatorWord:
        if isinstance(vectors, TestVector):
            vectors = [vectors] * len(s)
        if len(vectors) != len(s):
            raise DomainError(f"{len(vectors)} test vectors for a word of length {len(s)}")
        return cls(tuple(zip(s.word, vectors)))

    @property
    def signature(self) -> Signature:
        return Signature(tuple(sign for sign, _ in self.letters))


# -- inner product -----------------------------------------------------------


def _basis_inner(v: Word, w: Word, metric: GramMatrix | None) -> Fraction:
    if metric is None:
        return Fraction(int(v == w))
    out = Fraction(1)
    for i, j in zip(v, w):
        out *= metric.rows[i][j]
        if not out:
            break
    return out


def _tensor_inner(F: FockState, G: FockState, metric: GramMatrix | None) -> QPolynomial:
    acc = ZERO
    if metric is None:
        for w, a in F.items():
            b = G.amplitude(w)
            if b:
                acc = acc + a * b
        return acc
    for v, a in F.items():
        for w, b in G.items():
            g = _basis_inner(v, w, metric)
            if g:
                acc = acc + a * b * g
    return acc


def _swap_last_two(G: FockState) -> FockState:
    return FockState({w[:-2] + (w[-1], w[-2]): a for w, a in G.items()})


def deformed_inner(F: FockState, G: FockState, sector: int, metric: GramMatrix | None = None) -> QPolynomial:
    """<F, G>_n = <F, lambda_n G> with lambda_n = 1 + q * (swap of the last two slots)."""
    for name, state in (("F", F), ("G", G)):
        stray = state.sectors() - {sector}
        if stray:
            raise DomainError(f"{name} has components in sectors {sorted(stray)}, expected only {sector}")
    plain = _tensor_inner(F, G, metric)
    if sector <= 1:
        return plain
    return plain + Q * _tensor_inner(F, _swap_last_two(G), metric)


# -- operators ---------------------------------------------------------------


def apply_creation(f: TestVector, state: FockState) -> FockState:
    """A+(f): prepend f to every tensor, sending the vacuum to f."""
    out: list[tuple[Word, QPolynomial]] = []
    coords = [(i, c) for i, c in enumerate(f.coords) if c]
    for w, a in state.items():
        for i, c in coords:
            out.append(((i,) + w, a * c))
    return FockState(out)


def apply_annihilation(f: TestVector, state: FockState, metric: GramMatrix | None = None) -> FockState:
    """A(f), acting sector by sector.

    n = 1: g -> <f,g> vacuum; n = 2: g1 x g2 -> <f,g1> g2 + q <f,g2> g1;
    n > 2: contracts the first slot only. The vacuum is killed.
    """
    out: list[tuple[Word, QPolynomial]] = []
    for w, a in state.items():
        n = len(w)
        if n == 0:
            continue
        first = f.pairing(w[0], metric)
        if n == 2:
            if first:
                out.append(((w[1],), a * first))
            second = f.pairing(w[1], metric)
            if second:
                out.append(((w[0],), a * Q * second))
        elif first:
            out.append((w[1:], a * first))
    return FockState(out)


def apply_word(word: OperatorWord, state: FockState | None = None, metric: GramMatrix | None = None) -> FockState:
    """Apply the product to ``state`` (the vacuum by default), rightmost factor first."""
    state = FockState.vacuum() if state is None else state
    for sign, f in reversed(word.letters):
        if sign == CREATION:
            state = apply_creation(f, state)
        else:
            state = apply_annihilation(f, state, metric)
        if state.is_zero():
            break
    return state


def vacuum_moment(word: OperatorWord, metric: GramMatrix | None = None) -> QPolynomial:
    """<vacuum, A^{e(1)}(f_1) ... A^{e(m)}(f_m) vacuum> as a polynomial in q."""
    return apply_word(word, metric=metric).amplitude(())


def gram_moment(s: Signature, gram: GramMatrix) -> QPolynomial:
    """Vacuum moment for test vectors f_1..f_m with the given Gram matrix."""
    if gram.size != len(s):
        raise DomainError(f"Gram matrix is {gram.size}x{gram.size} but the word has length {len(s)}")
    vectors = [TestVector.basis(j, len(s)) for j in range(len(s))]
    return vacuum_moment(OperatorWord.from_signature(s, vectors), metric=gram)


# -- the counts P_{n,k} and P_n ----------------------------------------------

UNIT = TestVector((1,))


def signature_moment(s: Signature) -> QPolynomial:
    """Moment of the word with every test vector equal to one unit vector."""
    return vacuum_moment(OperatorWord.from_signature(s, UNIT))


@lru_cache(maxsize=None)
def p_nk(n: int, k: int) -> QPolynomial:
    """P_{n,k}: sum of unit-vector moments over the k-stratum of plus signatures."""
    if not 1 <= k <= n:
        raise DomainError(f"p_nk needs 1 <= k <= n, got n={n}, k={k}")
    guard(n, P_LIMIT, "p_nk")
    acc = ZERO
    for s in enumerate_plus_signatures(n, k):
        acc = acc + signature_moment(s)
    return acc


@lru_cache(maxsize=None)
def p_n(n: int) -> QPolynomial:
    if n < 1:
        raise DomainError(f"p_n needs n >= 1, got {n}")
    guard(n, P_LIMIT, "p_n")
    acc = ZERO
    for k in range(1, n + 1):
        acc = acc + p_nk(n, k)
    return acc


def embedded_table(depth: int) -> TriangleTable:
    """x_{n,k} = P_{n+1,k+1} for 1 <= k <= n <= depth."""
    return TriangleTable(tuple(tuple(p_nk(n + 1, k + 1) for k in range(1, n + 1)) for n in range(1, depth + 1)))


def fock_boundary(depth: int) -> list[QPolynomial]:
    """b_n = (1+q) P_n."""
    return [ONE_PLUS_Q * p_n(n) for n in range(1, depth + 1)]


def verify_cts_embedding(depth: int) -> Report:
    if not 1 <= depth <= P_LIMIT - 1:
        raise DomainError(f"verify_cts_embedding needs 1 <= N <= {P_LIMIT - 1}, got {depth}")
    table = embedded_table(depth)
    report = Report()

    t = Tally("fock-table-satisfies-recurrence")
    for n in range(1, depth):
        for k in range(1, n + 1):
            rhs = ZERO
            for j in range(k, n + 1):
                rhs = rhs + table.x(n, j)
            t.expect(table.x(n + 1, k + 1) == rhs, f"x_{{{n + 1},{k + 1}}}")
    report.add(t.result())

    t = Tally("fock-table-boundary")
    for n in range(1, depth + 1):
        t.expect(table.x(n, n) == ONE_PLUS_Q, f"x_{{{n},{n}}}={table.x(n, n)}")
        t.expect(table.x(n, 1) == ONE_PLUS_Q * p_n(n), f"x_{{{n},1}}={table.x(n, 1)}")
    report.add(t.result())

    t = Tally("fock-table-equals-closed-form")
    closed = solve_closed_form(fock_boundary(depth))
    where = table.first_mismatch(closed)
    t.cases = sum(1 for _ in table.entries())
    if where is not None:
        t.first_failure = f"x_{{{where[0]},{where[1]}}}"
    report.add(t.result())
    return report


def verify_sandwich(n: int) -> Check:
    """C_n < P_n(1) < (2n-1)!!, strictly."""
    if not 3 <= n <= P_LIMIT - 1:
        raise DomainError(f"verify_sandwich needs 3 <= n <= {P_LIMIT - 1}, got {n}")
    mid = qpoly_eval(p_n(n), 1)
    lo, hi = catalan_number(n), semifactorial(n)
    ok = lo < mid < hi
    return Check(f"sandwich n={n}", ok, 1, f"{lo} < {mid} < {hi}")

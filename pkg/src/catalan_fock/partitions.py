"""Pair partitions of {1, ..., 2n}, their +-1 signatures and Wick sums.

Index conventions are 1-based throughout, matching the usual notation
{(l_1, r_1), ..., (l_n, r_n)} with increasing left indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, guard

PP_LIMIT = 7
NCPP_LIMIT = 8
SIGNATURE_LIMIT = 8
FIBER_LIMIT = 7


@dataclass(frozen=True)
class PairPartition:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(l), int(r)) for l, r in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        n = len(pairs)
        if n == 0:
            raise DomainError("a pair partition needs at least one pair")
        points = sorted(x for pair in pairs for x in pair)
        if points != list(range(1, 2 * n + 1)):
            raise DomainError(f"pairs do not cover {{1..{2 * n}}} exactly: {pairs}")
        if any(l >= r for l, r in pairs):
            raise DomainError(f"every pair needs l < r: {pairs}")
        lefts = [l for l, _ in pairs]
        if any(a >= b for a, b in zip(lefts, lefts[1:])):
            raise DomainError(f"left indices must increase: {pairs}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> PairPartition:
        """Build from pairs in any order; each pair is oriented and sorted by left index."""
        oriented = sorted((min(a, b), max(a, b)) for a, b in pairs)
        return cls(tuple(oriented))

    @classmethod
    def from_ordered_set(cls, pairs: Iterable[Sequence]) -> PairPartition:
        """Relabel pairs drawn from any totally ordered set by rank (1-based)."""
        pairs = [tuple(p) for p in pairs]
        rank = {v: i + 1 for i, v in enumerate(sorted(x for p in pairs for x in p))}
        return cls.from_pairs((rank[a], rank[b]) for a, b in pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def lefts(self) -> tuple[int, ...]:
        return tuple(l for l, _ in self.pairs)

    @property
    def rights(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.pairs)

    def by_right(self) -> tuple[tuple[int, int], ...]:
        """The same pairs ordered by increasing right index (display only)."""
        return tuple(sorted(self.pairs, key=lambda p: p[1]))

    def to_json(self) -> list[list[int]]:
        return [[l, r] for l, r in self.pairs]

    @classmethod
    def from_json(cls, obj) -> PairPartition:
        return cls(tuple(tuple(p) for p in obj))

    def __str__(self) -> str:
        return "{" + ",".join(f"({l},{r})" for l, r in self.pairs) + "}"


@dataclass(frozen=True)
class Signature:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(e) for e in self.word)
        if any(e not in (-1, 1) for e in word):
            raise DomainError(f"signature letters must be -1 or +1: {self.word}")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse a string over '+'/'-', position 1 leftmost."""
        letters = []
        for i, ch in enumerate(text):
            if ch == "+":
                letters.append(1)
            elif ch == "-":
                letters.append(-1)
            else:
                raise DomainError(f"bad signature character {ch!r} at position {i + 1} in {text!r}")
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "".join("+" if e == 1 else "-" for e in self.word)

    def to_json(self) -> str:
        return str(self)

    @property
    def minus_positions(self) -> tuple[int, ...]:
        return tuple(j + 1 for j, e in enumerate(self.word) if e == -1)


@dataclass(frozen=True)
class SignatureClass:
    plus: bool
    k: int | None = None

    @property
    def label(self) -> str:
        return "plus" if self.plus else "minus"


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix of rational inner products <f_i, f_j>."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise DomainError("Gram matrix must be square")
        for i in range(m):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise DomainError(f"Gram matrix not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence]) -> GramMatrix:
        vs = [tuple(Fraction(x) for x in v) for v in vectors]
        return cls(tuple(tuple(sum((a * b for a, b in zip(u, v)), Fraction(0)) for v in vs) for u in vs))

    @classmethod
    def ones(cls, m: int) -> GramMatrix:
        return cls(tuple((Fraction(1),) * m for _ in range(m)))

    @classmethod
    def identity(cls, m: int) -> GramMatrix:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __call__(self, i: int, j: int) -> Fraction:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]


# -- pair partitions ---------------------------------------------------------


def _matchings(unmatched: tuple[int, ...], noncrossing: bool, open_rights: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not unmatched:
        yield []
        return
    first, rest = unmatched[0], unmatched[1:]
    # a partner beyond the nearest enclosing right index would cross that pair
    ceiling = min((r for r in open_rights if r > first), default=None) if noncrossing else None
    for idx, partner in enumerate(rest):
        if ceiling is not None and partner > ceiling:
            break
        remaining = rest[:idx] + rest[idx + 1 :]
        for tail in _matchings(remaining, noncrossing, open_rights + (partner,)):
            yield [(first, partner)] + tail


def enumerate_pp(n: int) -> list[PairPartition]:
    """All of PP(2n), ordered lexicographically by (r_1, ..., r_n)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    guard(n, PP_LIMIT, "enumerate_pp")
    return [PairPartition(tuple(m)) for m in _matchings(tuple(range(1, 2 * n + 1)), False, ())]


def is_noncrossing(p: PairPartition) -> bool:
    pairs = p.pairs
    for h in range(len(pairs)):
        _, rh = pairs[h]
        for k in range(h + 1, len(pairs)):
            lk, rk = pairs[k]
            if (lk < rh) != (rk < rh):
                return False
    return True


def enumerate_ncpp(n: int) -> list[PairPartition]:
    """All of NCPP(2n), in the same order as :func:`enumerate_pp`.

    Crossing branches are pruned during the recursion so n = 8 stays cheap;
    the result equals filtering :func:`enumerate_pp` by :func:`is_noncrossing`.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    guard(n, NCPP_LIMIT, "enumerate_ncpp")
    return [PairPartition(tuple(m)) for m in _matchings(tuple(range(1, 2 * n + 1)), True, ())]


def k_class(p: PairPartition) -> int:
    return 2 * p.n - p.lefts[-1]


def tau(p: PairPartition) -> Signature:
    word = [0] * (2 * p.n)
    for l, r in p.pairs:
        word[l - 1] = -1
        word[r - 1] = 1
    return Signature(tuple(word))


# -- signatures --------------------------------------------------------------


def _is_plus(word: Sequence[int]) -> bool:
    if sum(word) != 0:
        return False
    suffix = 0
    for e in reversed(word):
        suffix += e
        if suffix < 0:
            return False
    return True


def classify_signature(s: Signature) -> SignatureClass:
    if len(s) % 2:
        raise DomainError(f"signature length must be even, got {len(s)}")
    if not _is_plus(s.word):
        return SignatureClass(False)
    return SignatureClass(True, len(s) - max(s.minus_positions))


def is_plus(s: Signature) -> bool:
    return len(s) % 2 == 0 and _is_plus(s.word)


def enumerate_plus_signatures(n: int, k: int | None = None) -> list[Signature]:
    """The plus class of length 2n (or its k-stratum), lexicographic with -1 < +1."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    guard(n, SIGNATURE_LIMIT, "enumerate_plus_signatures")
    if k is not None and not 1 <= k <= n:
        raise DomainError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    out = []
    for word in product((-1, 1), repeat=2 * n):
        if not _is_plus(word):
            continue
        s = Signature(word)
        if k is None or classify_signature(s).k == k:
            out.append(s)
    return out


def _require_plus(s: Signature, who: str) -> None:
    if not is_plus(s):
        raise DomainError(f"{who}: signature {s} is not in the plus class")


def fiber_size(s: Signature) -> int:
    """prod_h (2h - l_h) over the positions l_1 < ... < l_n of -1 in s."""
    _require_plus(s, "fiber_size")
    return prod(2 * h - l for h, l in enumerate(s.minus_positions, start=1))


def enumerate_pp_eps(s: Signature) -> list[PairPartition]:
    """All pair partitions p with tau(p) = s, lexicographic in (r_1, ..., r_n)."""
    _require_plus(s, "enumerate_pp_eps")
    n = len(s) // 2
    guard(n, FIBER_LIMIT, "enumerate_pp_eps")
    lefts = s.minus_positions
    rights = tuple(j + 1 for j, e in enumerate(s.word) if e == 1)
    out: list[PairPartition] = []

    def assign(h: int, free: tuple[int, ...], chosen: list[int]) -> None:
        if h == n:
            out.append(PairPartition(tuple(zip(lefts, chosen))))
            return
        for idx, r in enumerate(free):
            if r > lefts[h]:
                assign(h + 1, free[:idx] + free[idx + 1 :], chosen + [r])

    assign(0, rights, [])
    return out


def ncpp_counterpart(s: Signature) -> PairPartition:
    """The unique non-crossing partition in the fiber of s, by stack matching."""
    _require_plus(s, "ncpp_counterpart")
    stack: list[int] = []
    pairs = []
    for j, e in enumerate(s.word, start=1):
        if e == -1:
            stack.append(j)
        else:
            pairs.append((stack.pop(), j))
    return PairPartition(tuple(sorted(pairs)))


# -- moments -----------------------------------------------------------------


def wick_moment(s: Signature, gram: GramMatrix, mode: str) -> Fraction:
    """Vacuum moment of b^{s(1)}(f_1)...b^{s(m)}(f_m) on the free or boson Fock space."""
    if gram.size != len(s):
        raise DomainError(f"Gram matrix is {gram.size}x{gram.size} but the word has length {len(s)}")
    if mode not in ("free", "boson"):
        raise DomainError(f"mode must be 'free' or 'boson', got {mode!r}")
    if not is_plus(s):
        return Fraction(0)
    if mode == "free":
        p = ncpp_counterpart(s)
        return prod((gram(l, r) for l, r in p.pairs), start=Fraction(1))
    return sum(
        (prod((gram(l, r) for l, r in p.pairs), start=Fraction(1)) for p in enumerate_pp_eps(s)),
        Fraction(0),
    )


def count_strata(n: int) -> dict[int, tuple[int, int]]:
    """k -> (|PP_k(2n)|, |NCPP_k(2n)|) by exhaustive enumeration."""
    guard(n, PP_LIMIT, "count_strata")
    table = {k: [0, 0] for k in range(1, n + 1)}
    for p in enumerate_pp(n):
        row = table[k_class(p)]
        row[0] += 1
        if is_noncrossing(p):
            row[1] += 1
    return {k: (a, b) for k, (a, b) in table.items()}


def suffix_law_holds(p: PairPartition) -> bool:
    """Rights outnumber lefts in every tail {t, ..., 2n}, and the l_s-form of that law."""
    n = p.n
    rights, lefts = set(p.rights), p.lefts
    left_set = set(lefts)
    for t in range(1, 2 * n + 1):
        tail = range(t, 2 * n + 1)
        if sum(x in rights for x in tail) < sum(x in left_set for x in tail):
            return False
    for s in range(1, n + 1):
        if sum(1 for r in rights if r >= lefts[s - 1]) < n - s + 1:
            return False
    return True

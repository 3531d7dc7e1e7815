"""Exact scalars: binomials, rationals and polynomials in ``q``.

Rationals are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator. :class:`QPolynomial` is a dense polynomial in
the deformation parameter ``q`` with rational coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def binomial(n: int, k: int) -> int:
    """n choose k, zero outside ``0 <= k <= n``."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def semifactorial(n: int) -> int:
    """(2n-1)!! = 1*3*...*(2n-1); equals 1 for n = 0."""
    out = 1
    for odd in range(1, 2 * n, 2):
        out *= odd
    return out


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a Fraction."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QPolynomial:
    """Polynomial in q with Fraction coefficients, ascending degree.

    The coefficient tuple never ends in a zero, so the zero polynomial is
    ``()`` and equality is plain tuple equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> QPolynomial:
        return cls((c,))

    @classmethod
    def q(cls) -> QPolynomial:
        return cls((0, 1))

    @classmethod
    def coerce(cls, x: object) -> QPolynomial:
        if isinstance(x, QPolynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return cls((x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to QPolynomial")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPolynomial((other,))
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if len(self._coeffs) <= 1:
            # agree with hash of the equal scalar
            return hash(self._coeffs[0] if self._coeffs else 0)
        return hash(self._coeffs)

    def __add__(self, other: object) -> QPolynomial:
        try:
            o = QPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._coeffs, o._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> QPolynomial:
        return QPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: object) -> QPolynomial:
        try:
            o = QPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> QPolynomial:
        return (-self) + other

    def __mul__(self, other: object) -> QPolynomial:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return QPolynomial(c * other for c in self._coeffs)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QPolynomial:
        if e < 0:
            raise ValueError("negative exponent")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, q0: Scalar) -> Fraction:
        return qpoly_eval(self, q0)

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> QPolynomial:
        if not isinstance(obj, dict) or set(obj) != {"coeffs"}:
            raise ValueError(f"expected {{'coeffs': [...]}}, got {obj!r}")
        return cls(parse_rational(c) for c in obj["coeffs"])

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = "q" if i == 1 else f"q^{i}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag.numerator}{mono}"
                else:
                    body = f"({format_rational(mag)}){mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self) -> str:
        return f"QPolynomial({str(self)!r})"


ZERO = QPolynomial()
ONE = QPolynomial((1,))
Q = QPolynomial((0, 1))
ONE_PLUS_Q = QPolynomial((1, 1))


def qpoly_arith(a: QPolynomial, b: QPolynomial, op: str) -> QPolynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def qpoly_eval(p: QPolynomial, q0: Scalar) -> Fraction:
    """Horner evaluation at a rational point."""
    q0 = Fraction(q0)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * q0 + c
    return acc


def ring_to_json(x: Union[Scalar, QPolynomial]):
    if isinstance(x, QPolynomial):
        return x.to_json()
    return format_rational(x)


def ring_from_json(obj) -> Union[Fraction, QPolynomial]:
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict):
        return QPolynomial.from_json(obj)
    raise ValueError(f"not a ring element: {obj!r}")

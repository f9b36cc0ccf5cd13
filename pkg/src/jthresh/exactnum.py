"""Exact scalar arithmetic: rationals, real quadratic irrationals, polynomials.

Rationals are plain :class:`fractions.Fraction` (aliased ``Rat``).  A
:class:`QuadNum` is a real number ``a + b*sqrt(d)`` with rational ``a, b``
and a square-free integer radicand ``d >= 0``; its ordering is the ordering
of the real numbers it denotes, decided exactly by integer arithmetic.
Within one computation at most one irrational radicand ever occurs, so
arithmetic between two distinct radicands is rejected rather than widened.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

from .errors import MixedRadicands, ZeroPolynomial

Rat = Fraction

RatLike = Union[int, Fraction]
Scalar = Union[int, Fraction, "QuadNum"]


def rat(value: RatLike | str) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(value: Fraction) -> str:
    """Render as 'p/q', omitting the denominator when it is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 0 as s*s*d with d square-free; returns (s, d)."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n == 0:
        return 0, 0
    r = isqrt(n)
    if r * r == n:
        return r, 1
    s, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, d


def rat_sqrt(x: Fraction) -> "QuadNum":
    """Exact square root of a non-negative rational as a QuadNum."""
    if x < 0:
        raise ValueError("square root of a negative rational")
    s, d = squarefree_decompose(x.numerator * x.denominator)
    coeff = Fraction(s, x.denominator)
    if d in (0, 1):
        return QuadNum(coeff * (1 if d else 0))
    return QuadNum(0, coeff, d)


class QuadNum:
    """Real number a + b*sqrt(d), d square-free >= 0, with exact ordering.

    Perfect-square radicands are folded into the rational part eagerly, so
    rational values always have b == 0 and d == 0.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RatLike = 0, b: RatLike = 0, d: int = 0):
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            d = 0
        else:
            s, d = squarefree_decompose(d)
            b *= s
            if d in (0, 1):
                a += b * (1 if d else 0)
                b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):  # immutable after __init__
        raise AttributeError("QuadNum is immutable")

    # -- predicates ------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_rat(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        """Sign of the real number, in {-1, 0, +1}, computed exactly."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        lhs, rhs = a * a, b * b * d
        if a > 0:  # b < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(value: Scalar) -> "QuadNum":
        if isinstance(value, QuadNum):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadNum(value)
        return NotImplemented  # type: ignore[return-value]

    def _join_radicand(self, other: "QuadNum") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise MixedRadicands(f"sqrt({self.d}) with sqrt({other.d})")
        return self.d

    def __add__(self, other: Scalar) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._join_radicand(o)
        return QuadNum(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other: Scalar) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "QuadNum":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._join_radicand(o)
        return QuadNum(self.a * o.a + self.b * o.b * d,
                       self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.sign() == 0:
            raise ZeroDivisionError("division by zero QuadNum")
        if o.b == 0:
            return QuadNum(self.a / o.a, self.b / o.a, self.d)
        # multiply by the conjugate; norm = a^2 - b^2 d is nonzero
        norm = o.a * o.a - o.b * o.b * o.d
        conj = QuadNum(o.a, -o.b, o.d)
        return (self * conj) / QuadNum(norm)

    def __rtruediv__(self, other: Scalar) -> "QuadNum":
        o = self._coerce(other)
        return o / self

    # -- comparisons (total order of the denoted reals) -------------------

    def _cmp(self, other: Scalar) -> int:
        return (self - other).sign()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (QuadNum, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: Scalar) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Scalar) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Scalar) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Scalar) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self) -> str:
        if self.b == 0:
            return format_rat(self.a)
        tail = f"sqrt({self.d})" if abs(self.b) == 1 else f"{format_rat(abs(self.b))}*sqrt({self.d})"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        op = "+" if self.b > 0 else "-"
        return f"{format_rat(self.a)} {op} {tail}"


def quad_sign(x: QuadNum) -> int:
    """Exact sign of a QuadNum: -1, 0 or +1."""
    return x.sign()


def as_rat(x: Scalar) -> Fraction:
    """Coerce a scalar known to be rational down to a Fraction."""
    if isinstance(x, QuadNum):
        return x.to_rat()
    return Fraction(x)


@dataclass(frozen=True)
class RatPoly:
    """Univariate polynomial with rational coefficients, lowest degree first.

    The zero polynomial is stored with an empty coefficient tuple; otherwise
    the leading coefficient is nonzero.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RatLike]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: Scalar) -> Scalar:
        acc: Scalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if self.is_zero:
            return "RatPoly(0)"
        terms = " + ".join(f"({format_rat(c)})*t^{i}" for i, c in enumerate(self.coeffs) if c != 0)
        return f"RatPoly({terms})"


def poly_roots_quadratic(p: RatPoly) -> list[QuadNum]:
    """All real roots of a polynomial of degree <= 2, increasing, exact.

    Both roots of a genuine quadratic share one square-free radicand (the
    square-free part of the discriminant).  Negative discriminant gives [].
    """
    if p.is_zero:
        raise ZeroPolynomial("no roots of the zero polynomial")
    if p.degree > 2:
        raise ValueError(f"degree {p.degree} > 2")
    if p.degree == 0:
        return []
    if p.degree == 1:
        c, b = p.coeffs
        return [QuadNum(-c / b)]
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [QuadNum(-b / (2 * a))]
    root = rat_sqrt(disc)
    center = QuadNum(-b / (2 * a))
    half = root / (2 * a)
    lo, hi = center - half, center + half
    return [lo, hi] if lo < hi else [hi, lo]


def decimal_str(x: Scalar, digits: int = 12) -> str:
    """Render a scalar to a fixed number of significant decimal digits.

    Display-only: integer/Decimal arithmetic throughout, deterministic
    across platforms.  Exact zero renders as "0".
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    q = x if isinstance(x, QuadNum) else QuadNum(Fraction(x))
    if q.sign() == 0:
        return "0"
    hi = Context(prec=digits + 10, rounding=ROUND_HALF_EVEN)
    val = hi.divide(Decimal(q.a.numerator), Decimal(q.a.denominator))
    if q.b != 0:
        root = hi.sqrt(Decimal(q.d))
        val = hi.add(val, hi.multiply(
            hi.divide(Decimal(q.b.numerator), Decimal(q.b.denominator)), root))
    target = Decimal(1).scaleb(val.adjusted() - digits + 1)
    return str(val.quantize(target, rounding=ROUND_HALF_EVEN, context=hi))

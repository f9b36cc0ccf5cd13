"""Numeric core: rationals, quadratic irrationals, quadratic root extraction."""

from __future__ import annotations

from decimal import Decimal, getcontext
from fractions import Fraction
from math import isqrt
from random import Random

import pytest

from jthresh.errors import MixedRadicands, ZeroPolynomial
from jthresh.exactnum import (QuadNum, RatPoly, decimal_str, format_rat,
                              poly_roots_quadratic, quad_sign, rat, rat_sqrt,
                              squarefree_decompose)


def oracle_sign(p: Fraction, q: Fraction, d: int) -> int:
    """Independent sign oracle: 64-digit decimal evaluation.

    Valid for the bounded random values used here: a nonzero p + q*sqrt(d)
    with numerators/denominators below 10^3 and d < 10^3 is bounded away
    from zero by far more than 10^-30, so 64 digits decide the sign; exact
    zero is detected symbolically first.
    """
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p * p == q * q * d and (p > 0) != (q > 0):
        return 0
    getcontext().prec = 64
    val = (Decimal(p.numerator) / Decimal(p.denominator)
           + Decimal(q.numerator) / Decimal(q.denominator) * Decimal(d).sqrt())
    return 1 if val > 0 else -1


class TestQuadSign:
    def test_known_signs(self):
        # sqrt(3) > 1 since 3 > 1
        assert quad_sign(QuadNum(-1, 1, 3)) == 1
        assert quad_sign(QuadNum(0, 0, 0)) == 0
        # 1 < sqrt(2) since 1 < 2
        assert quad_sign(QuadNum(1, -1, 2)) == -1

    def test_matches_decimal_oracle(self):
        rng = Random(7001)
        squarefree = [2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 19, 21, 23, 26]
        for _ in range(500):
            p = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
            q = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
            d = rng.choice(squarefree)
            assert quad_sign(QuadNum(p, q, d)) == oracle_sign(p, q, d)

    def test_rational_embedding_agrees_with_fraction_order(self):
        rng = Random(7002)
        for _ in range(300):
            a = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
            b = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
            assert (QuadNum(a) < QuadNum(b)) == (a < b)
            assert (QuadNum(a) == QuadNum(b)) == (a == b)

    def test_perfect_square_radicand_collapses(self):
        rng = Random(7003)
        for _ in range(200):
            p = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
            q = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
            k = rng.randint(0, 9)
            x = QuadNum(p, q, k * k)
            assert x.is_rational
            assert x.to_rat() == p + q * k


class TestQuadArithmetic:
    def test_field_ops_match_rational_embedding(self):
        rng = Random(7004)
        for _ in range(200):
            a, b = (Fraction(rng.randint(-30, 30), rng.randint(1, 8)) for _ in "ab")
            assert (QuadNum(a) + QuadNum(b)).to_rat() == a + b
            assert (QuadNum(a) * QuadNum(b)).to_rat() == a * b

    def test_conjugate_norm(self):
        rng = Random(7005)
        for _ in range(200):
            p = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
            q = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
            x = QuadNum(p, q, 7)
            conj = QuadNum(p, -q, 7)
            assert (x * conj) == p * p - q * q * 7

    def test_division_round_trip(self):
        rng = Random(7006)
        for _ in range(200):
            x = QuadNum(Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)), 5)
            y = QuadNum(Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)), 5)
            if y.sign() == 0:
                continue
            assert (x / y) * y == x

    def test_mixed_radicands_rejected(self):
        with pytest.raises(MixedRadicands):
            QuadNum(0, 1, 2) + QuadNum(0, 1, 3)
        with pytest.raises(MixedRadicands):
            QuadNum(1, 1, 5) * QuadNum(1, 1, 7)

    def test_normalization_invariants(self):
        x = QuadNum(1, 2, 12)  # 1 + 2*sqrt(12) = 1 + 4*sqrt(3)
        assert (x.a, x.b, x.d) == (Fraction(1), Fraction(4), 3)
        assert QuadNum(0, 1, 9) == 3
        assert QuadNum(5, 0, 7).d == 0
        zero = QuadNum(0, 0, 0)
        assert zero.sign() == 0 and zero.d == 0

    def test_immutability(self):
        x = QuadNum(1, 1, 2)
        with pytest.raises(AttributeError):
            x.a = Fraction(2)


class TestSquarefree:
    def test_decomposition(self):
        rng = Random(7007)
        for _ in range(300):
            n = rng.randint(0, 10**6)
            s, d = squarefree_decompose(n)
            assert s * s * d == n
            if n > 0:
                for p in range(2, isqrt(d) + 1):
                    assert d % (p * p) != 0

    def test_rat_sqrt_squares_back(self):
        rng = Random(7008)
        for _ in range(200):
            x = Fraction(rng.randint(0, 400), rng.randint(1, 40))
            r = rat_sqrt(x)
            assert r.sign() >= 0
            assert r * r == x


class TestPolyRoots:
    def test_golden_quadratic(self):
        # 2t^2 + 2t - 1: roots (-1 +- sqrt(3))/2
        p = RatPoly([-1, 2, 2])
        roots = poly_roots_quadratic(p)
        assert roots == [QuadNum(Fraction(-1, 2), Fraction(-1, 2), 3),
                         QuadNum(Fraction(-1, 2), Fraction(1, 2), 3)]

    def test_double_and_linear(self):
        assert poly_roots_quadratic(RatPoly([0, 0, 1])) == [QuadNum(0)]
        assert poly_roots_quadratic(RatPoly([-1, 2])) == [QuadNum(Fraction(1, 2))]
        assert poly_roots_quadratic(RatPoly([5])) == []
        assert poly_roots_quadratic(RatPoly([1, 0, 1])) == []  # t^2 + 1

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomial):
            poly_roots_quadratic(RatPoly([0, 0, 0]))

    def test_substitution_oracle(self):
        rng = Random(7009)
        found = 0
        for _ in range(300):
            coeffs = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(3)]
            p = RatPoly(coeffs)
            if p.is_zero:
                continue
            roots = poly_roots_quadratic(p)
            for r in roots:
                assert p(r) == 0  # exact substitution
                found += 1
            assert roots == sorted(roots)
        assert found > 100  # the sweep actually exercised real roots

    def test_root_count_matches_discriminant(self):
        rng = Random(7010)
        for _ in range(200):
            c, b, a = (Fraction(rng.randint(-9, 9)) for _ in range(3))
            if a == 0:
                continue
            disc = b * b - 4 * a * c
            n = len(poly_roots_quadratic(RatPoly([c, b, a])))
            assert n == (0 if disc < 0 else 1 if disc == 0 else 2)


class TestRendering:
    def test_format_rat(self):
        assert format_rat(Fraction(6, 5)) == "6/5"
        assert format_rat(Fraction(-27)) == "-27"
        assert format_rat(Fraction(0)) == "0"
        assert rat("16/3") == Fraction(16, 3)

    def test_decimal_fixed_significant_digits(self):
        assert decimal_str(Fraction(-1, 4), 12) == "-0.250000000000"
        assert decimal_str(Fraction(6, 5), 12) == "1.20000000000"
        assert decimal_str(Fraction(-27), 12) == "-27.0000000000"
        assert decimal_str(QuadNum(0, 1, 3), 12) == "1.73205080757"
        assert decimal_str(Fraction(0), 12) == "0"
        assert decimal_str(Fraction(6, 5), 5) == "1.2000"

    def test_repr_is_readable(self):
        assert repr(QuadNum(Fraction(-1, 2), Fraction(1, 2), 3)) == "-1/2 + 1/2*sqrt(3)"
        assert repr(QuadNum(Fraction(3, 2))) == "3/2"

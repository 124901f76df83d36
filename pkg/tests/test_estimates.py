import math
from fractions import Fraction

import mpmath
import pytest
import sympy

from lehmerseq.errors import DomainError, ResourceError
from lehmerseq.estimates import (GaussQ, confluent_vandermonde, confluent_vandermonde_symbolic,
                                 equidistribution_delta, exact_det, hadamard_bound,
                                 limsup_delta_estimate, limsup_resultant_estimate, sandwich_check)
from lehmerseq.polycore import IntPoly, cyclotomic

from .conftest import GOLDEN_SQ, LEHMER, SMYTH, random_poly


def sympy_confluent(points):
    n = sum(m for _, m in points)
    cols = []
    for x, m in points:
        for c in range(m):
            cols.append([sympy.binomial(j, c) * x ** (j - c) if j >= c else 0 for j in range(n)])
    return sympy.Matrix(n, n, lambda j, c: cols[c][j]).det()


class TestConfluentVandermonde:
    def test_rational_points_against_sympy(self, rng):
        for _ in range(15):
            k = rng.randint(1, 4)
            xs = rng.sample(range(-6, 7), k)
            pts = [(Fraction(x, rng.randint(1, 3)), rng.randint(1, 3)) for x in xs]
            if len({x for x, _ in pts}) < k:
                continue
            res = confluent_vandermonde(pts)
            assert res.equal
            ref = sympy_confluent([(sympy.Rational(x.numerator, x.denominator), m) for x, m in pts])
            assert sympy.Rational(res.determinant.numerator, res.determinant.denominator) == ref

    def test_complex_points_exact(self):
        pts = [(complex(1, 1), 2), (complex(0, -1), 1), (0.5, 2)]
        res = confluent_vandermonde(pts)
        assert res.equal
        ref = sympy.expand(sympy_confluent([(1 + sympy.I, 2), (-sympy.I, 1), (sympy.Rational(1, 2), 2)]))
        assert sympy.Rational(res.determinant.re) == sympy.re(ref)
        assert sympy.Rational(res.determinant.im) == sympy.im(ref)

    def test_repeated_point_gives_zero(self):
        assert confluent_vandermonde([(2, 1), (2, 2)]).determinant == 0

    def test_symbolic_identity(self):
        assert confluent_vandermonde_symbolic(2, 2)

    def test_errors(self):
        with pytest.raises(ResourceError):
            confluent_vandermonde([(1, 40), (2, 40)])
        with pytest.raises(DomainError):
            confluent_vandermonde([])

    def test_exact_det_against_sympy(self, rng):
        for _ in range(20):
            n = rng.randint(1, 5)
            m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
            ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m]).det()
            got = exact_det(m)
            assert sympy.Rational(got.numerator, got.denominator) == ref

    def test_gaussian_rational_arithmetic(self):
        a, b = GaussQ(1, 2), GaussQ(Fraction(1, 3), -1)
        za, zb = complex(1, 2), complex(1 / 3, -1)
        for got, ref in ((a * b, za * zb), (a / b, za / zb), (a - b, za - zb)):
            assert abs(complex(float(got.re), float(got.im)) - ref) < 1e-12


class TestDiscriminantBounds:
    def test_per_n_upper_bound(self, rng):
        for _ in range(10):
            p = random_poly(rng, 4, 3, min_deg=2)
            try:
                rep = limsup_delta_estimate(p, 20)
            except DomainError:
                continue
            assert rep.passed and rep.lower_chain_ok

    def test_golden_square_ratio(self):
        rep = limsup_delta_estimate(GOLDEN_SQ, 30)
        assert abs(rep.ratio - 1) < 1e-9
        assert abs(rep.T - ((3 + 5**0.5) / 2) ** 2) < 1e-9

    def test_sandwich(self, rng):
        for p in (GOLDEN_SQ, SMYTH, LEHMER):
            rep = sandwich_check(p, 20)
            assert rep.passed
        with pytest.raises(DomainError):
            sandwich_check(cyclotomic(5), 5)

    def test_hadamard_alias(self):
        with mpmath.workdps(40):
            ref = 4 * ((3 + mpmath.sqrt(5)) / 2) ** 12
        assert abs(hadamard_bound(GOLDEN_SQ, 3) / ref - 1) < 1e-12


class TestResultantEstimate:
    def test_ratio_for_q_x_minus_1(self):
        est = limsup_resultant_estimate(GOLDEN_SQ, IntPoly([-1, 1]), 40)
        assert 0.9 <= est.ratio <= 1.1
        # Res(P_n, x - 1) = P_n(1) = 2 - L_{2n}
        lucas = [2, 1]
        while len(lucas) < 82:
            lucas.append(lucas[-1] + lucas[-2])
        assert est.values[1:] == [2 - lucas[2 * n] for n in range(1, 41)]

    def test_small_n_can_dominate(self):
        # |Res(P_2, x - 2)|^(1/2) = 3 exceeds the limit M = 2.618; only a finite-N max
        est = limsup_resultant_estimate(GOLDEN_SQ, IntPoly([-2, 1]), 40)
        assert est.values[2] == -9 and est.ratio > 1

    def test_preconditions(self):
        with pytest.raises(DomainError):
            limsup_resultant_estimate(cyclotomic(1) * GOLDEN_SQ, IntPoly([-1, 1]), 4)
        with pytest.raises(DomainError):
            limsup_resultant_estimate(GOLDEN_SQ, IntPoly([0, 1]), 4)


class TestEquidistribution:
    def brute(self, xs, N):
        m = len(xs)
        return [n for n in range(1, N + 1)
                if min(min(n * x % 1, 1 - n * x % 1) for x in xs) > Fraction(1, 3 * m)]

    def test_rational_angles(self):
        assert equidistribution_delta([Fraction(1, 2)], 6).achieving == [1, 3, 5]
        for xs in ([Fraction(1, 5)], [Fraction(1, 7), Fraction(2, 5)]):
            assert equidistribution_delta(xs, 60).achieving == self.brute(xs, 60)

    def test_irrational_angles_nonempty(self):
        xs = [math.sqrt(2) % 1, math.pi % 1, math.e % 1]
        rep = equidistribution_delta(xs, 200)
        assert rep.nonempty and rep.delta == Fraction(1, 9)

    def test_distinct_required(self):
        with pytest.raises(DomainError):
            equidistribution_delta([Fraction(1, 3), Fraction(4, 3)], 5)

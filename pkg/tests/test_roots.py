import math

import mpmath
import pytest

from lehmerseq.errors import DomainError, ResourceError
from lehmerseq.polycore import IntPoly, cyclotomic
from lehmerseq.roots import (dobrowolski_bound, find_roots, graeffe_measure, graeffe_measure_to,
                             hadamard_disc_bound, is_antireciprocal, is_cyclotomic_product,
                             is_reciprocal, mahler_measure)

from .conftest import GOLDEN_SQ, LEHMER, SMYTH, numeric_roots, random_poly

with mpmath.workdps(60):
    LEHMER_M = mpmath.mpf("1.17628081825991750654407033847403505069341580656469")
    PLASTIC = mpmath.mpf("1.32471795724474602596090885447809734073440405690173")
    GOLDEN_SQ_M = (3 + mpmath.sqrt(5)) / 2


def oracle_measure(p):
    with mpmath.workdps(60):
        return abs(p.lc) * mpmath.fprod(max(1, abs(r)) for r in numeric_roots(p))


class TestFindRoots:
    def test_disks_contain_oracle_roots(self, rng):
        for _ in range(25):
            p = random_poly(rng, 7, 6, monic=False)
            rs = find_roots(p, 1e-20)
            assert len(rs) == p.degree
            assert rs.max_radius <= 1e-20
            with mpmath.workdps(60):
                for z in numeric_roots(p):
                    assert min(abs(z - mpmath.mpc(r.re, r.im)) - r.radius for r in rs) <= 1e-40

    def test_ordering(self):
        rs = find_roots(LEHMER, 1e-15)
        mods = [float(m) for m in rs.moduli]
        assert mods == sorted(mods, reverse=True)
        assert abs(mods[0] - float(LEHMER_M)) < 1e-14

    def test_repeated_roots_flagged(self):
        rs = find_roots(IntPoly([-1, 1]) ** 3 * IntPoly([2, 0, 1]))
        assert sum(r.cluster for r in rs) == 3
        assert all(r.multiplicity == 3 for r in rs if r.cluster)

    def test_zero_roots(self):
        rs = find_roots(IntPoly([0, 0, 1, 1]))
        assert sum(1 for r in rs if r.re == 0 and r.im == 0) == 2

    def test_errors(self):
        with pytest.raises(DomainError):
            find_roots(IntPoly([3]))
        with pytest.raises(DomainError):
            find_roots(GOLDEN_SQ, 0)


class TestMeasure:
    @pytest.mark.parametrize("p,ref", [(LEHMER, LEHMER_M), (SMYTH, PLASTIC),
                                       (GOLDEN_SQ, GOLDEN_SQ_M)])
    def test_known_values(self, p, ref):
        m = mahler_measure(p, 1e-30)
        assert m.error <= 1e-30
        with mpmath.workdps(60):
            assert m.lower <= ref <= m.upper

    def test_against_oracle(self, rng):
        for _ in range(30):
            p = random_poly(rng, 7, 5, monic=False)
            m = mahler_measure(p, 1e-20)
            ref = oracle_measure(p)
            with mpmath.workdps(60):
                assert abs(m.value - ref) <= m.error + ref * mpmath.mpf(10) ** -40

    def test_monomial_and_constant(self):
        assert mahler_measure(IntPoly([0, 1]), 1e-25).error <= 1e-25
        assert mahler_measure(IntPoly([0, 0, -3]), 1e-25).lower <= 3

    def test_cyclotomic_measure_is_one(self):
        m = mahler_measure(cyclotomic(15) * cyclotomic(7), 1e-20)
        assert m.lower <= 1 <= m.upper

    def test_log_enclosure(self):
        lv, le = mahler_measure(LEHMER, 1e-20).log()
        with mpmath.workdps(60):
            assert abs(lv - mpmath.log(LEHMER_M)) <= le < 1e-19

    def test_graeffe_overlaps_roots(self, rng):
        for _ in range(10):
            p = random_poly(rng, 6, 4)
            g = graeffe_measure(p, 8)
            assert g.overlaps(mahler_measure(p, 1e-20))

    def test_graeffe_to_tolerance(self):
        res, k = graeffe_measure_to(SMYTH, 1e-6)
        assert res.error <= 1e-6 and res.lower <= PLASTIC <= res.upper
        assert k > 0

    def test_graeffe_budget(self):
        with pytest.raises(ResourceError):
            graeffe_measure(LEHMER, 30, bit_budget=64)


class TestKronecker:
    def test_cyclotomic_products_detected(self):
        w = is_cyclotomic_product(IntPoly([0, 1]) * cyclotomic(12) * cyclotomic(5) ** 2)
        assert w and w.x_power == 1 and sorted(w.indices) == [5, 5, 12]

    def test_agrees_with_measure_one(self, rng):
        # Kronecker: a monic integer polynomial with M = 1 is x^a times cyclotomics
        assert not is_cyclotomic_product(LEHMER)
        for _ in range(200):
            p = random_poly(rng, 5, 1)
            assert bool(is_cyclotomic_product(p)) == (oracle_measure(p) < 1 + 1e-12)


def test_reciprocity():
    assert is_reciprocal(LEHMER) and not is_antireciprocal(LEHMER)
    assert is_antireciprocal(IntPoly([-1, 0, 1]))
    assert not is_reciprocal(SMYTH)


def test_dobrowolski_bound():
    assert abs(dobrowolski_bound(16, 1) - (math.log(math.log(16)) / math.log(16)) ** 3) < 1e-15
    with pytest.raises(DomainError):
        dobrowolski_bound(2, 1)


def test_hadamard_bound():
    h = hadamard_disc_bound(GOLDEN_SQ, 3)
    ref = 4 * ((3 + mpmath.sqrt(5)) / 2) ** 12
    assert abs(h / ref - 1) < 1e-12
    with pytest.raises(DomainError):
        hadamard_disc_bound(IntPoly([1, -2, 1]), 1)


class TestInvariants:
    def test_measure_at_least_one_and_kronecker(self):
        from lehmerseq.corpus import monic_polys

        for p in monic_polys(4, 2):
            m = mahler_measure(p, 1e-12)
            assert m.upper >= 1
            assert bool(is_cyclotomic_product(p)) == (m.lower <= 1)

    def test_graeffe_overlaps_on_random_polys(self, rng):
        for _ in range(200):
            p = random_poly(rng, 8, 5)
            assert graeffe_measure(p, 8).overlaps(mahler_measure(p, 1e-12))

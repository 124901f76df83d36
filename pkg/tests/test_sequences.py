import itertools

import mpmath
import pytest
import sympy

from lehmerseq.errors import DomainError, ResourceError
from lehmerseq.numtheory import divisor_table
from lehmerseq.polycore import IntPoly, discriminant, power_map
from lehmerseq.sequences import (a0_power_divisibility, a0_power_exponent, b_seq_quadratic,
                                 characteristic_primes, delta_pk_monotonicity, delta_seq,
                                 dobrowolski_check, essential_factors, gauss_check_coefficients,
                                 gauss_check_delta, gauss_check_resultant, gauss_report, lehmer_delta,
                                 order_in_quotient, predicted_disc_divisibility, psi_direct,
                                 set_partitions, small_delta, torsion_orders, u_divisibility_check,
                                 u_of_n, u_partition_factors, u_small_prime_divisibility, u_structure,
                                 u_upper_bound_check)

from .conftest import GOLDEN_SQ, SMYTH, numeric_roots, random_poly

GOLDEN = IntPoly([-1, -1, 1])  # x^2 - x - 1


def numeric_u(p, n):
    """U(n) from roots: prod over root tuples of (prod_{D+} - prod_{D-})."""
    _, _, dp, dm = u_structure(n)
    with mpmath.workdps(80):
        rts = numeric_roots(p, 80)
        plus = [mpmath.fprod(rts[j] ** e for j, e in zip(js, dp))
                for js in itertools.product(range(len(rts)), repeat=len(dp))]
        minus = [mpmath.fprod(rts[j] ** e for j, e in zip(js, dm))
                 for js in itertools.product(range(len(rts)), repeat=len(dm))]
        return mpmath.fprod(a - b for a in plus for b in minus)


def numeric_disc(p):
    with mpmath.workdps(80):
        rts = numeric_roots(p, 80)
        return mpmath.fprod((a - b) ** 2 for a, b in itertools.combinations(rts, 2))


class TestDelta:
    def test_fibonacci_closed_form(self):
        # x^2 - x - 1: Delta(P_n) = 5 F_n^2
        fib = [0, 1]
        while len(fib) < 31:
            fib.append(fib[-1] + fib[-2])
        seq = delta_seq(GOLDEN, 30)
        assert seq.values[1:] == [5 * fib[n] ** 2 for n in range(1, 31)]

    def test_against_numeric_roots(self, rng):
        for _ in range(10):
            p = random_poly(rng, 4, 3, min_deg=2)
            seq = delta_seq(p, 6)
            for n in range(1, 7):
                num = numeric_disc(power_map(p, n))
                assert abs(num - seq.values[n]) < 1e-30 * max(1, abs(num))

    def test_delta_is_moebius_transform(self):
        seq = delta_seq(SMYTH, 30)
        for n in range(1, 31):
            ref = sum(sympy.mobius(n // m) * seq.values[m] for m in sympy.divisors(n))
            assert seq.delta(n) == ref


class TestGauss:
    def test_report_arithmetic(self):
        assert gauss_report([None] + [2**n for n in range(1, 41)], "powers").passed
        assert gauss_report([None] + list(range(1, 21)), "identity").failures()[0] == 2
        bad = gauss_report([None, 1, 1, 2], "bad")
        assert bad.failures() == [3]
        j = bad.to_json()
        assert j["range"] == [1, 3] and j["pass"] is False
        assert j["records"][2]["verdict"] == "fail" and "quotient" not in j["records"][2]

    def test_families_hold(self, rng):
        for _ in range(15):
            p = random_poly(rng, 4, 3, min_deg=2)
            assert gauss_check_coefficients(p, 12).passed
            assert gauss_check_delta(p, 12).passed
            q = random_poly(rng, 3, 3)
            assert gauss_check_resultant(p, q, 12).passed

    def test_resultant_needs_monic_q(self):
        with pytest.raises(DomainError):
            gauss_check_resultant(GOLDEN_SQ, IntPoly([1, 2]), 4)

    def test_json_factorization(self):
        j = gauss_check_delta(GOLDEN_SQ, 6).to_json()
        for rec in j["records"]:
            v = int(rec["value"])
            f = rec["factorization"]
            prod = f["sign"]
            for q, e in f["factors"]:
                prod *= int(q) ** e
            assert prod == v or v == 0


class TestU:
    def test_structure(self):
        assert u_structure(12) == (2, 2, [12, 2], [4, 6])
        assert u_structure(7)[:2] == (1, 1)
        with pytest.raises(DomainError):
            u_structure(1)

    def test_known_values(self):
        assert u_of_n(GOLDEN_SQ, 2) == 16
        assert u_of_n(GOLDEN_SQ, 7) == 705600

    def test_against_roots(self, rng):
        for _ in range(12):
            p = random_poly(rng, 3, 2, min_deg=2)
            n = rng.choice([2, 3, 4, 5, 6, 10])
            u = u_of_n(p, n)
            ref = numeric_u(p, n)
            assert abs(ref - u) < 1e-20 * max(1, abs(ref))

    def test_degree_cap(self):
        with pytest.raises(ResourceError):
            u_of_n(SMYTH, 30, degree_cap=20)

    def test_divisibility_theorems(self, rng):
        for _ in range(20):
            p = random_poly(rng, 3, 2, min_deg=2)
            for n in (2, 3, 4, 6, 9, 10, 12):
                u = u_of_n(p, n)
                main, extra = u_divisibility_check(p, n, u=u)
                assert main.passed and all(v.passed for v in extra)
                assert a0_power_divisibility(p, n, u=u).passed
                assert u_upper_bound_check(p, n, u=u).passed is True

    def test_a0_exponent(self):
        assert a0_power_exponent(2, 7) == 1
        assert a0_power_exponent(2, 12) == 2 * 4 * 2**2
        v = a0_power_divisibility(IntPoly([2, 0, 1]), 8)
        assert v.passed and v.detail["prime_power_check"]

    def test_small_primes(self):
        for q in (7, 17, 23):
            vs = u_small_prime_divisibility(GOLDEN_SQ, 7, q)
            assert all(v.passed is not False for v in vs)
        vs = u_small_prime_divisibility(IntPoly([2, 1, 1]), 2, 5)
        assert vs[0].passed is None

    def test_dobrowolski(self):
        for v in dobrowolski_check(SMYTH, [2, 3, 5, 7, 11]):
            assert v.passed


class TestPartitions:
    def test_bell_numbers(self):
        assert [len(set_partitions(k)) for k in range(1, 7)] == [1, 2, 5, 15, 52, 203]
        assert set_partitions(3)[0] == ((1, 2, 3),)

    @pytest.mark.parametrize("n,vals", [(2, [-1, -16]), (3, [-5, -45]), (5, [-45, -320])])
    def test_quadratic_values(self, n, vals):
        out, u = u_partition_factors(GOLDEN_SQ, n)
        assert [v for _, v in out] == vals

    def test_product_is_u(self, rng):
        for _ in range(8):
            p = random_poly(rng, 3, 2, min_deg=2)
            if p.coeffs[0] == 0 or discriminant(p) == 0:
                continue
            for n in (2, 6):
                out, u = u_partition_factors(p, n)
                prod = 1
                for _, v in out:
                    prod *= v
                assert prod == u

    def test_three_primes_rejected(self):
        with pytest.raises(DomainError):
            u_partition_factors(GOLDEN_SQ, 30)


class TestTorsionAndSmallDelta:
    def test_torsion_brute_force(self, rng):
        for _ in range(25):
            p = random_poly(rng, 4, 2, min_deg=2)
            if p.coeffs[0] == 0:
                continue
            orders = torsion_orders(p)
            for m in range(1, 25):
                vanishes = discriminant(power_map(p, m)) == 0
                assert vanishes == any(m % o == 0 for o in orders)

    def test_small_delta_report(self, rng):
        rep = small_delta(GOLDEN_SQ, 20)
        assert rep.passed and rep.sign_verdict == "pass" and rep.zero_witness is None
        for _ in range(10):
            p = random_poly(rng, 4, 2, min_deg=2)
            rep = small_delta(p, 16)
            assert all(rep.divisibility)
            assert rep.sign_verdict != "fail"

    def test_cyclotomic_zero_witness(self):
        rep = small_delta(IntPoly([1, 1, 1]), 6)
        assert rep.zero_witness == 3 and rep.sign_verdict == "inapplicable"
        assert 3 in rep.torsion

    def test_monotonicity(self):
        for v in delta_pk_monotonicity(GOLDEN_SQ, 2, 2, 6) + delta_pk_monotonicity(SMYTH, 3, 1, 5):
            assert v.passed is not False


class TestPsi:
    def test_direct_matches_lattice(self, rng):
        for _ in range(8):
            p = random_poly(rng, 3, 2, min_deg=2)
            if p.coeffs[0] == 0 or discriminant(p) == 0 or torsion_orders(p):
                continue
            psi = delta_seq(p, 12).psi()
            for n in range(2, 13):
                assert psi_direct(p, n) == psi[n]

    def test_essential_factors_squares(self):
        ef = essential_factors(GOLDEN_SQ, 12)
        assert ef.psi1_is_disc and ef.all_squares

    def test_characteristic_primes(self):
        out, degenerate = characteristic_primes(GOLDEN_SQ, 16)
        assert not degenerate
        # Delta(P_16) = 5 F_32^2 and F_32 = 3 * 7 * 47 * 2207; only 2207 is new
        assert [(c.p, c.k) for c in out] == [(2207, 2)]
        assert out[0].residue_ok and out[0].divides_psi


class TestQuotientOrders:
    def test_preconditions_named(self):
        with pytest.raises(DomainError, match="prime 2"):
            order_in_quotient(IntPoly([2, 1, 1]), 4)

    def test_predicted_divisibility(self, rng):
        for m in (2, 3, 7, 4, 9, 11, 121):
            v = predicted_disc_divisibility(GOLDEN_SQ, m)
            assert v.passed


class TestQuadraticSequences:
    def test_b_sequence(self):
        assert b_seq_quadratic(GOLDEN_SQ, 6)[1:] == [1, 3, 8, 21, 55, 144]
        with pytest.raises(DomainError):
            b_seq_quadratic(SMYTH, 4)

    def test_lehmer_delta(self):
        vals, growth = lehmer_delta(GOLDEN, 5)
        # P_n(1) = 1 - L_n + (-1)^n with Lucas numbers L_n
        assert vals[1:] == [-1, -1, -4, -5, -11]
        vals, _ = lehmer_delta(GOLDEN_SQ, 5)
        assert vals[1:] == [-1, -5, -16, -45, -121]

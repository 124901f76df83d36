import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lehmerseq.numtheory import (divisor_table, divisors, factorize, is_prime, lcm, mobius,
                                 mobius_transform, multiplicative_order, radical, totient)


@given(st.integers(-10**15, 10**15))
@settings(max_examples=200)
def test_factorize_matches_sympy(n):
    f = factorize(n)
    assert f.recompose() == n
    if n:
        assert dict(f.factors) == sympy.factorint(abs(n))
    assert f.complete


def test_factorize_zero_and_units():
    assert factorize(0).sign == 0
    assert factorize(1).factors == ()
    assert factorize(-1).sign == -1


def test_hard_composite_left_as_cofactor():
    n = (2**61 - 1) * (2**89 - 1) * 12
    f = factorize(n, work=1 << 10)
    assert f.recompose() == n
    assert f.exponent(2) == 2 and f.exponent(3) == 1
    if not f.complete:
        assert f.cofactor == (2**61 - 1) * (2**89 - 1)


@pytest.mark.parametrize("n", [2, 3, 97, 2**61 - 1, 2**89 - 1, 2**127 - 1])
def test_primes(n):
    assert is_prime(n)


@given(st.integers(0, 10**6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_carmichael_and_strong_pseudoprimes():
    for n in (561, 1105, 3215031751, 3825123056546413051, 3317044064679887385961981):
        assert not is_prime(n)


@given(st.integers(1, 5000))
def test_arithmetic_functions(n):
    assert mobius(n) == sympy.mobius(n)
    assert totient(n) == sympy.totient(n)
    assert divisors(n) == sympy.divisors(n)
    assert radical(n) == sympy.prod(sympy.primefactors(n))


def test_divisor_table():
    t = divisor_table(12)
    assert t.d_plus == [2, 12]
    assert t.d_minus == [4, 6]
    assert t.phi == 4
    assert len(divisor_table(30).d_plus) == 4


def test_mobius_transform_inverts_divisor_sums():
    g = {m: m * m + 1 for m in range(1, 61)}
    f = {n: sum(g[d] for d in divisors(n)) for n in range(1, 61)}
    assert all(mobius_transform(f, n) == g[n] for n in range(1, 61))


def test_order_and_lcm():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 1) == 1
    assert lcm(4, 6, 10) == 60
    assert lcm() == 1

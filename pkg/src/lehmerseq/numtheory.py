"""Elementary number theory: divisors, Moebius, totient and factorization."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

_SMALL_PRIMES = []


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = _sieve(10000)
_TRIAL_LIMIT = _SMALL_PRIMES[-1]
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BELOW = 3_317_044_064_679_887_385_961_981  # ~3.3e24


def primes_up_to(n: int) -> list:
    if n <= _TRIAL_LIMIT:
        return [p for p in _SMALL_PRIMES if p <= n]
    return _sieve(n)


def _strong_probable_prime(n, a):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = 64) -> bool:
    """Strong-pseudoprime test.

    Deterministic below 3.3e24 (first 13 prime bases); above that, ``rounds``
    random bases drawn from a generator seeded by ``n`` so the answer is
    reproducible.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_DETERMINISTIC_BELOW:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    rng = random.Random(n)
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1)) for _ in range(rounds))


def _brent(n, c, budget):
    """One Pollard-Brent run; returns a nontrivial factor or None."""
    y, r, q = 2, 1, 1
    g = 1
    m = 128
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        steps += r
        r *= 2
        if steps > budget:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def pollard_brent(n: int, budget: int = 1 << 20):
    """A nontrivial factor of composite ``n`` or None if the budget runs out."""
    if n % 2 == 0:
        return 2
    for c in range(1, 20):
        f = _brent(n, c, budget)
        if f:
            return f
    return None


@dataclass(frozen=True)
class Factorization:
    """sign * prod p^e * cofactor.

    ``cofactor`` is 1 for a complete factorization; otherwise it is a
    composite whose factors the work bound did not reach.
    """

    sign: int
    factors: tuple = ()
    cofactor: int = 1
    value: int = field(default=0, compare=False)

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def recompose(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> list:
        return [p for p, _ in self.factors]

    def as_list(self) -> list:
        return [[p, e] for p, e in self.factors]

    def __str__(self):
        if self.sign == 0:
            return "0"
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        body = " * ".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body


def factorize(n: int, work: int = 1 << 20) -> Factorization:
    """Factor an integer; composites resisting ``work`` rho steps are left
    as a flagged cofactor."""
    n = int(n)
    if n == 0:
        return Factorization(0, (), 1, 0)
    sign = 1 if n > 0 else -1
    m = abs(n)
    found: dict = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    stack = [m] if m > 1 else []
    leftover = 1
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            found[x] = found.get(x, 0) + 1
            continue
        r = isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        f = pollard_brent(x, work)
        if f is None:
            leftover *= x
        else:
            stack += [f, x // f]
    return Factorization(sign, tuple(sorted(found.items())), leftover, n)


def divisors(n: int) -> list:
    """Sorted positive divisors."""
    if n < 1:
        raise ValueError("divisors need n >= 1")
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def totient(n: int) -> int:
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out


def radical(n: int) -> int:
    out = 1
    for p, _ in factorize(n).factors:
        out *= p
    return out


@dataclass(frozen=True)
class DivisorTable:
    n: int
    entries: tuple  # (m, mu(n/m)) for every divisor m, ascending
    phi: int

    @property
    def d_plus(self) -> list:
        return [m for m, mu in self.entries if mu == 1]

    @property
    def d_minus(self) -> list:
        return [m for m, mu in self.entries if mu == -1]


@lru_cache(maxsize=4096)
def divisor_table(n: int) -> DivisorTable:
    if n < 1:
        raise ValueError("divisor_table needs n >= 1")
    return DivisorTable(n, tuple((m, mobius(n // m)) for m in divisors(n)), totient(n))


def mobius_transform(values: dict, n: int) -> int:
    """sum_{m | n} mu(n/m) values[m]."""
    return sum(mobius(n // m) * values[m] for m in divisors(n))


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError("a must be a unit mod n")
    if n == 1:
        return 1
    k = totient(n)
    for p, _ in factorize(k).factors:
        while k % p == 0 and pow(a, k // p, n) == 1:
            k //= p
    return k


def lcm(*xs) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out

"""Polynomials over Z/m and multiplicative orders in Z[x]/(m, P).

Coefficient lists are ascending, reduced into [0, m).  Only what the order
computation needs is implemented: products modulo a monic polynomial,
gcd over a prime field and distinct-degree factorization.
"""
from __future__ import annotations

from .errors import DomainError
from .numtheory import factorize, lcm
from .polycore import IntPoly


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(p: IntPoly, m: int) -> list:
    return _trim([c % m for c in p.coeffs])


def mulmod(a, b, f, m):
    """a*b mod (f, m) with f monic."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return remmod(prod, f, m)


def remmod(a, f, m):
    df = len(f) - 1
    r = [c % m for c in a]
    for k in range(len(r) - 1, df - 1, -1):
        c = r[k]
        if c:
            for i in range(df + 1):
                r[k - df + i] = (r[k - df + i] - c * f[i]) % m
    return _trim(r[:df])


def powmod(a, e, f, m):
    result = [1 % m]
    base = remmod(a, f, m)
    while e:
        if e & 1:
            result = mulmod(result, base, f, m)
        e >>= 1
        if e:
            base = mulmod(base, base, f, m)
    return _trim(result)


def _monic_p(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_p(a, b, p):
    a = _trim([c % p for c in a])
    b = _monic_p(_trim([c % p for c in b]), p) if b else None
    if not b:
        raise DomainError("division by zero polynomial mod p")
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    r = list(a)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] = (r[k + i] - c * b[i]) % p
    return _trim(q), _trim(r[:db])


def gcd_p(a, b, p):
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        _, r = divmod_p(a, b, p)
        a, b = b, r
    return _monic_p(a, p) if a else a


def deriv(a, m):
    return _trim([k * a[k] % m for k in range(1, len(a))])


def is_squarefree_mod(p: IntPoly, q: int) -> bool:
    a = reduce(p, q)
    if len(a) < 2:
        return True
    return len(gcd_p(a, deriv(a, q), q)) == 1


def distinct_degree(f, p):
    """Distinct-degree factorization of squarefree monic ``f`` over F_p:
    list of (degree, number of irreducible factors of that degree)."""
    f = _monic_p(_trim([c % p for c in f]), p)
    out = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = gcd_p(f, _trim(diff), p)
        if len(g) > 1:
            out.append((i, (len(g) - 1) // i))
            f, _ = divmod_p(f, g, p)
            h = remmod(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, 1))
    return out


def _reduce_order(candidate, is_one):
    order = candidate
    for q, _ in factorize(candidate).factors:
        while order % q == 0 and is_one(order // q):
            order //= q
    return order


def order_mod_prime_power(p_poly: IntPoly, q: int, e: int) -> dict:
    """Order of x in Z[x]/(q^e, P) for monic P squarefree mod the prime q."""
    f = reduce(p_poly, q)
    if not f or f[0] == 0:
        raise DomainError(f"x is not a unit modulo {q}: {q} divides the constant term")
    if not is_squarefree_mod(p_poly, q):
        raise DomainError(f"polynomial is not squarefree modulo {q}")
    degs = distinct_degree(f, q)
    exponent = lcm(*[q**k - 1 for k, _ in degs])
    one = [1]
    x = [0, 1]

    def is_one(n):
        return powmod(x, n, f, q) == one

    if not is_one(exponent):
        raise DomainError(f"order computation failed modulo {q}")
    base = _reduce_order(exponent, is_one)
    order = base
    if e > 1:
        modulus = q**e
        fm = reduce(p_poly, modulus)
        y = powmod(x, base, fm, modulus)
        t = 0
        while y != [1] and t < e:
            y = powmod(y, q, fm, modulus)
            t += 1
        order = base * q**t
    return {"prime": q, "exponent": e, "modulus": q**e, "factor_degrees": degs,
            "order": order, "order_mod_prime": base}


def order_in_quotient(p_poly: IntPoly, m: int):
    """Multiplicative order of x in Z[x]/(m, P), one component per prime
    power of m, plus M = lcm of the component orders."""
    if not p_poly.is_monic:
        raise DomainError("order_in_quotient requires a monic polynomial")
    if m < 2:
        raise DomainError("modulus must be >= 2")
    comps = [order_mod_prime_power(p_poly, q, e) for q, e in factorize(m).factors]
    return comps, lcm(*[c["order"] for c in comps])


def x_power_is_one(p_poly: IntPoly, n: int, m: int) -> bool:
    """x^n == 1 in Z[x]/(m, P)?"""
    f = reduce(p_poly, m)
    return powmod([0, 1], n, f, m) == [1 % m]

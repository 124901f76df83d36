"""Exact univariate integer polynomial arithmetic.

Everything here works over Python integers (and ``Fraction`` where a
rational intermediate cannot be avoided); no floating point is used.  The
main entry points are :func:`resultant`, :func:`discriminant`,
:func:`power_map`, :func:`composed_product`, :func:`multiset_poly` and
:func:`cyclotomic`.  Each of the last three also has an independent second
construction (``*_by_resultant`` / ``*_newton``) used for cross-validation.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterable, Sequence

from .errors import DomainError, ParseError
from .numtheory import divisors


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


class IntPoly:
    """Polynomial with integer coefficients, stored ascending (a_0 first).

    Instances are immutable and hashable.  The zero polynomial is the empty
    coefficient tuple; asking for its degree raises ``DomainError``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for a in coeffs:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise DomainError(f"non-integer coefficient {a}")
                a = a.numerator
            elif not isinstance(a, int):
                if int(a) != a:
                    raise DomainError(f"non-integer coefficient {a!r}")
                a = int(a)
            c.append(a)
        self._c = tuple(_trim(c))

    # construction helpers
    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return parse_poly(text)

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self) -> int:
        if not self._c:
            raise DomainError("degree of the zero polynomial is undefined")
        return len(self._c) - 1

    @property
    def lc(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no leading coefficient")
        return self._c[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self._c[k]
        return self._c[k] if 0 <= k < len(self._c) else 0

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self._c))

    def __repr__(self):
        return f"IntPoly({list(self._c)})"

    def __str__(self):
        return self.to_expr()

    def to_string(self) -> str:
        """Canonical ascending comma-separated coefficient string."""
        return ",".join(str(a) for a in self._c) if self._c else "0"

    def to_expr(self, var: str = "x") -> str:
        if not self._c:
            return "0"
        out = []
        for k in range(len(self._c) - 1, -1, -1):
            a = self._c[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                body = "" if mag == 1 else str(mag)
                body += var if k == 1 else f"{var}^{k}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    # arithmetic
    def __neg__(self):
        return IntPoly(-a for a in self._c)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return IntPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        n = max(len(self._c), len(other._c))
        return IntPoly(self[k] - other[k] for k in range(n))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self._c)
        other = _as_poly(other)
        return IntPoly(_mul(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative power")
        result, base = IntPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(k * self._c[k] for k in range(1, len(self._c)))

    def content(self) -> int:
        g = 0
        for a in self._c:
            g = gcd(g, a)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self._c:
            return self
        g = self.content()
        if self._c[-1] < 0:
            g = -g
        return IntPoly(a // g for a in self._c)

    def reverse(self) -> "IntPoly":
        """x^d P(1/x)."""
        return IntPoly(reversed(self._c))

    def compose_neg(self) -> "IntPoly":
        """P(-x)."""
        return IntPoly(a if k % 2 == 0 else -a for k, a in enumerate(self._c))

    def scale(self, c: int) -> "IntPoly":
        """P(c x)."""
        return IntPoly(a * c**k for k, a in enumerate(self._c))

    def inflate(self, n: int) -> "IntPoly":
        """P(x^n)."""
        out = [0] * (n * (len(self._c) - 1) + 1) if self._c else []
        for k, a in enumerate(self._c):
            out[n * k] = a
        return IntPoly(out)

    def mod_int(self, m: int) -> "IntPoly":
        return IntPoly(a % m for a in self._c)

    def divmod_monic(self, divisor: "IntPoly"):
        """Division with remainder by a monic (or unit-led) divisor over Z."""
        q, r = _divmod_unit(list(self._c), list(divisor._c))
        return IntPoly(q), IntPoly(r)

    def exact_div(self, divisor: "IntPoly") -> "IntPoly":
        """Quotient self / divisor; raises ``DomainError`` if not exact in Z[x]."""
        if divisor.is_zero:
            raise DomainError("division by the zero polynomial")
        q, r = _qdivmod([Fraction(a) for a in self._c], [Fraction(a) for a in divisor._c])
        if r or any(a.denominator != 1 for a in q):
            raise DomainError(f"{divisor} does not divide {self} in Z[x]")
        return IntPoly(q)

    def divides(self, other: "IntPoly") -> bool:
        """True iff self | other in Q[x]."""
        _, r = _qdivmod([Fraction(a) for a in other._c], [Fraction(a) for a in self._c])
        return not r


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to IntPoly")


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod_unit(a: list, b: list):
    if not b:
        raise DomainError("division by the zero polynomial")
    lb = b[-1]
    if lb not in (1, -1):
        raise DomainError("divisor must have leading coefficient +-1")
    db = len(b) - 1
    r = list(a)
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * lb
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] -= c * b[i]
    return _trim(q), _trim(r[:db] if db else [])


# rational polynomial helpers (lists of Fraction, ascending)

def _qdivmod(a: list, b: list):
    b = _trim(list(b))
    if not b:
        raise DomainError("division by the zero polynomial")
    r = _trim(list(a))
    db = len(b) - 1
    inv = 1 / Fraction(b[-1])
    q = [Fraction(0)] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] * inv
        q[k] = c
        for i in range(db + 1):
            r[k + i] -= c * b[i]
        _trim(r)
    return _trim(q), r


def _qmonic(a: list) -> list:
    lc = a[-1]
    return [x / lc for x in a]


def _qgcd(a: list, b: list) -> list:
    """Monic gcd over Q, computed by the primitive PRS over Z (Euclid over Q
    suffers coefficient blow-up)."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        g = a or b
        return _qmonic(g) if g else g
    a, b = list(_q_to_primitive(a).coeffs), list(_q_to_primitive(b).coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _trim(_prem(a, b))
        if r:
            c = _content(r)
            r = [x // c for x in r]
        a, b = b, r
    return _qmonic([Fraction(x) for x in a])


def _qderiv(a: list) -> list:
    return [k * a[k] for k in range(1, len(a))]


def _q_to_primitive(a: list) -> IntPoly:
    den = 1
    for x in a:
        den = den * x.denominator // gcd(den, x.denominator)
    return IntPoly(int(x * den) for x in a).primitive()


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Z (positive leading coefficient), by sympy's
    heuristic GCD; far faster than the PRS once degrees reach the hundreds."""
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    from sympy.polys.domains import ZZ
    from sympy.polys.euclidtools import dup_gcd

    g = dup_gcd([ZZ(x) for x in reversed(a.coeffs)], [ZZ(x) for x in reversed(b.coeffs)], ZZ)
    return IntPoly(int(x) for x in reversed(g)).primitive()


def prs_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Same as :func:`poly_gcd`, by the primitive PRS; kept as a cross-check."""
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    g = _qgcd([Fraction(x) for x in a], [Fraction(x) for x in b])
    return _q_to_primitive(g)


def is_squarefree(p: IntPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_decomposition(p: IntPoly) -> list:
    """Yun's algorithm: list of (factor, multiplicity) with primitive
    squarefree pairwise coprime factors whose product (with powers) equals
    ``p`` up to a constant.  Constant factors are dropped."""
    if p.is_zero:
        raise DomainError("zero polynomial")
    if p.degree == 0:
        return []
    f = [Fraction(x) for x in p]
    f1 = _qderiv(f)
    a = _qgcd(f, f1)
    b, _ = _qdivmod(f, a)
    c, _ = _qdivmod(f1, a)
    d = [x - y for x, y in _zip_pad(c, _qderiv(b))]
    out = []
    i = 1
    while len(b) > 1:
        a = _qgcd(b, _trim(d))
        if len(a) > 1:
            out.append((_q_to_primitive(a), i))
        b, _ = _qdivmod(b, a)
        c, _ = _qdivmod(_trim(d), a) if _trim(d) else ([], [])
        d = [x - y for x, y in _zip_pad(c, _qderiv(b))]
        i += 1
    return out


def squarefree_part(p: IntPoly) -> IntPoly:
    out = IntPoly([1])
    for f, _ in squarefree_decomposition(p):
        out = out * f
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    zero = Fraction(0)
    for k in range(n):
        yield (a[k] if k < len(a) else zero), (b[k] if k < len(b) else zero)


# determinants and resultants

def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = m[k][k]
        for i in range(k + 1, n):
            aik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * m[n - 1][n - 1]


def sylvester_matrix(a: IntPoly, b: IntPoly) -> list:
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    ad = list(reversed(a.coeffs))
    bd = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([0] * i + ad + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + bd + [0] * (size - i - n - 1))
    return rows


def sylvester_resultant(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) as the Bareiss determinant of the Sylvester matrix."""
    if a.is_zero or b.is_zero:
        raise DomainError("resultant with the zero polynomial")
    if a.degree == 0:
        return a.lc ** b.degree
    if b.degree == 0:
        return b.lc ** a.degree
    return bareiss_det(sylvester_matrix(a, b))


def _prem(a: list, b: list) -> list:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [x * lb for x in r]
        for i in range(db + 1):
            r[i + k] -= lr * b[i]
        _trim(r)
        e -= 1
    if e > 0:
        f = lb**e
        r = [x * f for x in r]
    return r


def _content(c) -> int:
    g = 0
    for a in c:
        g = gcd(g, a)
    return g


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) = lc(a)^deg b * lc(b)^deg a * prod (alpha_i - beta_j).

    Subresultant pseudo-remainder sequence over Z (fraction free).
    """
    if a.is_zero or b.is_zero:
        raise DomainError("resultant with the zero polynomial")
    m, n = a.degree, b.degree
    if m == 0:
        return a.lc**n
    if n == 0:
        return b.lc**m
    if n == 1:
        # (-1)^m sum a_i (-b0)^i b1^(m-i), i.e. (-1)^m b1^m a(-b0/b1)
        b0, b1 = b.coeffs
        if b1 == 1:
            acc = a(-b0)
        else:
            acc = sum(c * (-b0) ** i * b1 ** (m - i) for i, c in enumerate(a.coeffs))
        return -acc if m & 1 else acc
    if m == 1:
        return resultant(b, a) * (-1 if n & 1 else 1)
    A, B = list(a.coeffs), list(b.coeffs)
    s = 1
    if m < n:
        A, B = B, A
        m, n = n, m
        if m & 1 and n & 1:
            s = -1
    ca, cb = _content(A), _content(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    t = ca**n * cb**m
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da & 1 and db & 1:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return 0
        div = g * h**delta
        B = [x // div for x in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)
        if len(B) == 1:
            break
    da = len(A) - 1
    h = B[0] ** da // h ** (da - 1)
    return s * t * h


def discriminant(p: IntPoly) -> int:
    """prod_{j<k} (alpha_j - alpha_k)^2 for monic ``p``."""
    if p.is_zero or p.degree < 1:
        raise DomainError("discriminant needs degree >= 1")
    if not p.is_monic:
        raise DomainError("discriminant requires a monic polynomial")
    d = p.degree
    if d == 1:
        return 1
    r = resultant(p, p.derivative())
    return -r if (d * (d - 1) // 2) & 1 else r


def hankel_discriminant(p: IntPoly) -> int:
    """Discriminant as det[p_{i+j}] of Newton power sums (second route)."""
    if not p.is_monic:
        raise DomainError("discriminant requires a monic polynomial")
    d = p.degree
    ps = power_sums(p, 2 * d - 2)
    return bareiss_det([[ps[i + j] for j in range(d)] for i in range(d)])


# power sums and the power map

def power_sums(p: IntPoly, k_max: int) -> list:
    """[p_0, p_1, ..., p_{k_max}] with p_k the k-th power sum of the roots."""
    if not p.is_monic:
        raise DomainError("power sums require a monic polynomial")
    d = p.degree
    a = p.coeffs
    c = [a[d - i] for i in range(d + 1)]  # c[i] multiplies x^{d-i}; c[0] = 1
    ps = [d] + [0] * k_max
    for k in range(1, k_max + 1):
        s = k * c[k] if k <= d else 0
        for i in range(1, min(k - 1, d) + 1):
            s += c[i] * ps[k - i]
        ps[k] = -s
    return ps


def from_power_sums(sums: Sequence[int]) -> IntPoly:
    """Monic degree-d polynomial with power sums ``sums[1..d]`` (sums[0] ignored)."""
    d = len(sums) - 1
    c = [1] + [0] * d
    for k in range(1, d + 1):
        s = sums[k]
        for i in range(1, k):
            s += c[i] * sums[k - i]
        q, r = divmod(s, k)
        if r:
            raise DomainError("power sums do not come from an integer polynomial")
        c[k] = -q
    return IntPoly(reversed(c))


def power_map(p: IntPoly, n: int, _sums: Sequence[int] | None = None) -> IntPoly:
    """P_n(x) = prod (x - alpha_j^n), via Newton power sums."""
    if n < 1:
        raise DomainError("power_map needs n >= 1")
    if not p.is_monic:
        raise DomainError("power_map requires a monic polynomial")
    if n == 1:
        return p
    d = p.degree
    ps = _sums if _sums is not None and len(_sums) > n * d else power_sums(p, n * d)
    return from_power_sums([d] + [ps[k * n] for k in range(1, d + 1)])


def power_map_by_resultant(p: IntPoly, n: int) -> IntPoly:
    """P_n from Res_y(P(y), x - y^n), evaluated at x = 0..d and interpolated."""
    if not p.is_monic:
        raise DomainError("power_map requires a monic polynomial")
    d = p.degree
    values = []
    for c in range(d + 1):
        q = IntPoly([c] + [0] * (n - 1) + [-1])
        values.append(resultant(p, q))
    return interpolate(values)


def graeffe_step(q: IntPoly) -> IntPoly:
    """Root squaring: R(x^2) = (-1)^d Q(x) Q(-x)."""
    d = q.degree
    prod = _mul(q.coeffs, q.compose_neg().coeffs)
    even = prod[0::2]
    if d & 1:
        even = [-x for x in even]
    return IntPoly(even)


def interpolate(values: Sequence[int]) -> IntPoly:
    """Integer polynomial of degree <= n taking ``values[i]`` at x = i.

    Uses forward differences in the binomial basis; raises ``DomainError``
    when the interpolant is not in Z[x].
    """
    diffs = []
    row = list(values)
    while row:
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    out = [0] * len(values)
    falling = [1]  # coefficients of x(x-1)...(x-k+1)
    for k, dk in enumerate(diffs):
        if dk:
            q, r = divmod(dk, factorial(k))
            if r:
                # leave the division to the end in case the sum is integral
                return _interpolate_fraction(values)
            for i, f in enumerate(falling):
                out[i] += q * f
        falling = _mul(falling, [-k, 1])
    return IntPoly(out)


def _interpolate_fraction(values):
    out = [Fraction(0)] * len(values)
    row = list(values)
    diffs = []
    while row:
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    falling = [1]
    for k, dk in enumerate(diffs):
        f = Fraction(dk, factorial(k))
        for i, c in enumerate(falling):
            out[i] += f * c
        falling = _mul(falling, [-k, 1])
    return IntPoly(out)


# composed products

def _require_monic(*ps):
    for p in ps:
        if p.is_zero or not p.is_monic:
            raise DomainError(f"expected a monic polynomial, got {p}")


def composed_product(a: IntPoly, b: IntPoly) -> IntPoly:
    """Monic polynomial whose roots are all products alpha*beta.

    Res_y(A(y), y^deg B * B(x/y)) evaluated at integer x and interpolated.
    """
    _require_monic(a, b)
    da, db = a.degree, b.degree
    if da < 1 or db < 1:
        raise DomainError("composed_product needs degrees >= 1")
    values = []
    bc = b.coeffs
    for c in range(da * db + 1):
        g = IntPoly(bc[db - i] * c ** (db - i) for i in range(db + 1))
        values.append(0 if g.is_zero else resultant(a, g))
    out = interpolate(values)
    if out.degree != da * db or not out.is_monic:
        raise DomainError("composed product interpolation failed")
    return out


def composed_product_newton(a: IntPoly, b: IntPoly) -> IntPoly:
    """Same as :func:`composed_product` via p_k(AB) = p_k(A) p_k(B)."""
    _require_monic(a, b)
    n = a.degree * b.degree
    pa, pb = power_sums(a, n), power_sums(b, n)
    return from_power_sums([n] + [pa[k] * pb[k] for k in range(1, n + 1)])


def multiset_poly(p: IntPoly, multiset: Iterable[int], method: str = "resultant") -> IntPoly:
    """P_N(x) = prod over index tuples of (x - alpha_{j1}^{n1} ... alpha_{jr}^{nr}).

    Default: iterated :func:`composed_product` of power maps.  ``method="newton"``
    multiplies power sums directly and serves as the cross-check.
    """
    entries = sorted(int(n) for n in multiset)
    if not entries:
        raise DomainError("empty multiset")
    if any(n < 1 for n in entries):
        raise DomainError("multiset entries must be positive")
    _require_monic(p)
    if method == "newton":
        d = p.degree
        r = len(entries)
        size = d**r
        ps = power_sums(p, size * entries[-1])
        sums = [size] + [1] * size
        for n in entries:
            for k in range(1, size + 1):
                sums[k] *= ps[k * n]
        return from_power_sums(sums)
    if method != "resultant":
        raise DomainError(f"unknown method {method!r}")
    sums = power_sums(p, p.degree * entries[-1])
    out = power_map(p, entries[0], sums)
    for n in entries[1:]:
        out = composed_product(out, power_map(p, n, sums))
    return out


# cyclotomic polynomials

@lru_cache(maxsize=512)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise DomainError("cyclotomic(n) needs n >= 1")
    num = IntPoly([-1] + [0] * (n - 1) + [1])
    for m in divisors(n):
        if m < n:
            num, r = num.divmod_monic(cyclotomic(m))
            assert r.is_zero
    return num


# parsing

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\*?\s*x\s*(?:(?:\^|\*\*)\s*(\d+))?)?\s*")


def parse_poly(text: str) -> IntPoly:
    """Parse "1,-3,1" (ascending coefficients) or "x^2-3x+1"."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial string")
    s = text.strip()
    if "x" not in s:
        try:
            return IntPoly(int(tok) for tok in s.split(","))
        except ValueError as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
    coeffs: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        sign, num, xpart, power = m.groups()
        if not sign and not first:
            raise ParseError(f"missing operator in {text!r} at position {pos}")
        if not num and not xpart:
            raise ParseError(f"dangling sign in {text!r}")
        if xpart and "*" in xpart and not num:
            raise ParseError(f"'*' without a coefficient in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        k = (int(power) if power else 1) if xpart else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    return IntPoly(coeffs.get(k, 0) for k in range(top + 1))


def as_poly(p) -> IntPoly:
    """Accept an IntPoly, a coefficient sequence or a string."""
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, str):
        return parse_poly(p)
    return IntPoly(p)

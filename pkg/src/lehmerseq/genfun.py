"""Generating functions of Delta(P_n): rational reconstruction, the
logarithmic-derivative decomposition and the infinite-product identity.

Series are exact integer lists c[0..N].  Rational functions live in z with
the denominator normalized to D(0) = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import kernels
from .errors import ConsistencyError, DecompositionError, DomainError, OrderTooLowError
from .numtheory import divisor_table
from .polycore import IntPoly, as_poly, is_squarefree, poly_gcd
from .sequences import delta_seq

_Z = sympy.Symbol("z")


@dataclass
class Recurrence:
    """Connection polynomial C (C[0] = 1): sum_i C[i] s[n-i] = 0 for n >= order."""

    coeffs: tuple
    length: int

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def confirmed(self) -> bool:
        return self.length > 2 * self.order

    def characteristic(self) -> list:
        """Characteristic polynomial, ascending: x^L + C1 x^{L-1} + ... + C_L."""
        return list(reversed(self.coeffs))


def _primes_below(start, count):
    p = start
    for _ in range(count):
        p = sympy.prevprime(p)
        yield p


def _bm_mod(seq, p):
    c, b = [1], [1]
    L, m, bd = 0, 1, 1
    for n in range(len(seq)):
        disc = seq[n] % p
        for i in range(1, L + 1):
            disc = (disc + c[i] * seq[n - i]) % p
        if disc == 0:
            m += 1
            continue
        coef = disc * pow(bd, -1, p) % p
        t = list(c)
        if len(c) < len(b) + m:
            c += [0] * (len(b) + m - len(c))
        for i, bi in enumerate(b):
            c[i + m] = (c[i + m] - coef * bi) % p
        if 2 * L <= n:
            L, b, bd, m = n + 1 - L, t, disc, 1
        else:
            m += 1
    return (c + [0] * (L + 1))[: L + 1]


def _bm_integer(seq, max_primes=256):
    """Integral connection polynomial by BM modulo large primes and CRT.

    The candidate has order <= the rational minimal order, so if it
    satisfies the whole sequence exactly it is the minimal recurrence.
    None when no integral candidate is found.
    """
    modulus, crt, prev = 1, None, None
    for p in _primes_below(1 << 62, max_primes):
        c = _bm_mod(seq, p)
        if crt is not None and len(c) != len(crt):
            if len(c) < len(crt):
                continue
            modulus, crt = 1, None
        if crt is None:
            crt, modulus = c, p
        else:
            inv = pow(modulus, -1, p)
            crt = [a + modulus * ((b - a) * inv % p) for a, b in zip(crt, c)]
            modulus *= p
        half = modulus // 2
        cand = tuple(a - modulus if a > half else a for a in crt)
        if cand == prev:
            rec = Recurrence(tuple(Fraction(a) for a in cand), len(seq))
            if satisfies(rec, seq):
                return rec
        prev = cand
    return None


def berlekamp_massey(seq) -> Recurrence:
    """Minimal linear recurrence over Q for the whole prefix ``seq``."""
    if all(isinstance(v, int) for v in seq):
        rec = _bm_integer(list(seq))
        if rec is not None:
            return rec
    s = [Fraction(v) for v in seq]
    c = [Fraction(1)]
    b = [Fraction(1)]
    L, m, bd = 0, 1, Fraction(1)
    for n in range(len(s)):
        disc = s[n]
        for i in range(1, L + 1):
            disc += c[i] * s[n - i]
        if disc == 0:
            m += 1
            continue
        coef = disc / bd
        t = list(c)
        if len(c) < len(b) + m:
            c += [Fraction(0)] * (len(b) + m - len(c))
        for i, bi in enumerate(b):
            c[i + m] -= coef * bi
        if 2 * L <= n:
            L, b, bd, m = n + 1 - L, t, disc, 1
        else:
            m += 1
    c = (c + [Fraction(0)] * (L + 1))[: L + 1]
    return Recurrence(tuple(c), len(s))


def satisfies(rec: Recurrence, seq) -> bool:
    c, L = rec.coeffs, rec.order
    return all(sum(c[i] * seq[n - i] for i in range(L + 1)) == 0 for n in range(L, len(seq)))


# series helpers

def series_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def series_inv(a, N):
    """1/a mod z^{N+1} for a[0] = +-1."""
    if a[0] not in (1, -1):
        raise DomainError("series inverse needs a unit constant term")
    out = [0] * (N + 1)
    out[0] = a[0]
    for n in range(1, N + 1):
        acc = sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1))
        out[n] = -acc * a[0]
    return out


def series_pow(a, e, N):
    if e < 0:
        return series_pow(series_inv(a, N), -e, N)
    out = [1] + [0] * N
    base = list(a[: N + 1]) + [0] * max(0, N + 1 - len(a))
    while e:
        if e & 1:
            out = series_mul(out, base, N)
        e >>= 1
        if e:
            base = series_mul(base, base, N)
    return out


@dataclass
class RationalFn:
    num: IntPoly
    den: IntPoly

    def __post_init__(self):
        num, den = as_poly(self.num), as_poly(self.den)
        if den.is_zero:
            raise DomainError("zero denominator")
        if num.is_zero:
            self.num, self.den = IntPoly(), IntPoly([1])
            return
        g = poly_gcd(num, den)
        qn, qd = (_qdiv(num, g), _qdiv(den, g)) if g.degree > 0 else (list(num), list(den))
        c0 = Fraction(qd[0])
        if c0 == 0:
            raise DomainError("denominator vanishes at z = 0")
        qn = [Fraction(c) / c0 for c in qn]
        qd = [Fraction(c) / c0 for c in qd]
        if any(c.denominator != 1 for c in qn + qd):
            raise DomainError("cannot normalize denominator to D(0) = 1 over Z")
        self.num = IntPoly(int(c) for c in qn)
        self.den = IntPoly(int(c) for c in qd)

    def series(self, N: int) -> list:
        inv = series_inv(list(self.den.coeffs), N)
        return series_mul(list(self.num.coeffs), inv, N)

    def to_json(self) -> dict:
        return {"num": self.num.to_string(), "den": self.den.to_string()}

    def to_expr(self) -> str:
        return f"({self.num.to_expr('z')}) / ({self.den.to_expr('z')})"

    def __eq__(self, other):
        return isinstance(other, RationalFn) and self.num * other.den == other.num * self.den

    def poles(self, precision=1e-15):
        from .roots import find_roots

        if self.den.degree == 0:
            return []
        return find_roots(self.den, precision).roots


def _qdiv(a: IntPoly, g: IntPoly) -> list:
    """a / g over Q for g | a, as a list of Fractions."""
    qq, r = _to_sympy(a).div(_to_sympy(g))
    if not r.is_zero:
        raise ConsistencyError("non-exact polynomial division")
    return [Fraction(int(c.p), int(c.q)) for c in reversed(qq.all_coeffs())]


def order_bound(d: int) -> int:
    """Number of exponent vectors e in N^d with sum d(d-1), each e_j <= 2(d-1):
    an upper bound for the number of distinct poles of f_P."""
    total, cap = d * (d - 1), 2 * (d - 1)
    ways = [1] + [0] * total
    for _ in range(d):
        new = [0] * (total + 1)
        for s, w in enumerate(ways):
            if w:
                for e in range(min(cap, total - s) + 1):
                    new[s + e] += w
        ways = new
    return ways[total]


def default_terms(d: int) -> int:
    return 2 * min(order_bound(d), 2000) + 8


@dataclass
class DeltaGeneratingFunction:
    fn: RationalFn
    recurrence: Recurrence
    N: int
    held_out: int
    certified: bool  # N reached the order bound


def rational_fn_of_delta(p, N: int | None = None, held_out: int = 8) -> DeltaGeneratingFunction:
    """f_P(z) = sum_{n>=1} Delta(P_n) z^n as an exact rational function."""
    p = as_poly(p)
    if p.is_zero or not p.is_monic or p.degree < 2:
        raise DomainError("rational_fn_of_delta needs a monic polynomial of degree >= 2")
    if not is_squarefree(p):
        raise DomainError("rational_fn_of_delta needs a squarefree polynomial")
    need = default_terms(p.degree)
    N = need if N is None else N
    vals = delta_seq(p, N + held_out).values
    seq = [0] + vals[1:]  # f(0) = 0
    rec = berlekamp_massey(seq[: N + 1])
    if not satisfies(rec, seq):
        raise OrderTooLowError(f"recurrence of order {rec.order} from {N} terms fails on held-out "
                               f"terms; rerun with a larger N (bound suggests N >= {need})")
    if any(c.denominator != 1 for c in rec.coeffs):
        raise ConsistencyError("denominator of f_P is not integral")
    den = IntPoly(int(c) for c in rec.coeffs)
    num = IntPoly(series_mul(seq, list(den.coeffs), rec.order)[: rec.order + 1])
    fn = RationalFn(num, den)
    if fn.den.degree > 0 and not is_squarefree(fn.den):
        raise ConsistencyError("f_P has a pole that is not simple")
    if fn.series(N + held_out)[1:] != vals[1:]:
        raise ConsistencyError("reconstructed f_P does not reproduce Delta(P_n)")
    return DeltaGeneratingFunction(fn, rec, N, held_out, N >= need)


def pole_monomial_check(p, fn: RationalFn, precision=1e-20) -> bool:
    """Each pole modulus equals prod |alpha_j|^{-e_j} with sum e = d(d-1),
    0 <= e_j <= 2(d-1), up to root-enclosure error."""
    from itertools import product

    from .roots import find_roots

    p = as_poly(p)
    d = p.degree
    logs = [math.log(float(r.modulus)) for r in find_roots(p, precision).roots]
    cands = set()
    for e in product(range(2 * (d - 1) + 1), repeat=d):
        if sum(e) == d * (d - 1):
            cands.add(round(sum(a * b for a, b in zip(e, logs)), 9))
    for z in fn.poles(precision):
        t = -math.log(float(z.modulus))
        if min(abs(t - c) for c in cands) > 1e-7 * max(1.0, abs(t)):
            return False
    return True


# logarithmic-derivative decomposition

@dataclass
class MintonDecomposition:
    terms: list  # [(u, c)], u(0) = 1

    def to_json(self) -> list:
        return [{"u": u.to_string(), "c": c} for u, c in self.terms]

    def synthesize(self) -> RationalFn:
        """sum c_j z u_j' / u_j as one rational function."""
        den = IntPoly([1])
        for u, _ in self.terms:
            den = den * u
        num = IntPoly()
        z = IntPoly([0, 1])
        for j, (u, c) in enumerate(self.terms):
            t = z * u.derivative() * c
            for i, (v, _) in enumerate(self.terms):
                if i != j:
                    t = t * v
            num = num + t
        return RationalFn(num, den)


def gauss_property_witness(seq, N: int | None = None):
    """Least n <= N with n not dividing sum_{m|n} mu(n/m) a_m; ``seq`` is
    a_1, a_2, ... (0-based list).  None when no violation."""
    N = len(seq) if N is None else min(N, len(seq))
    for n in range(1, N + 1):
        s = sum(mu * seq[m - 1] for m, mu in divisor_table(n).entries if mu)
        if s % n:
            return n
    return None


def _to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)), _Z, domain="QQ")


def _from_sympy(f) -> IntPoly:
    return IntPoly(reversed([int(c) for c in f.all_coeffs()]))


def _weight_guesses(fn: RationalFn) -> list:
    """Integer residues num / (z D') at the poles, from double-precision roots.

    Only a guess: it is used to split D before factoring and every piece is
    confirmed exactly.  The residues are evaluated in mpmath because Horner
    in doubles overflows for large D.
    """
    import mpmath

    try:
        roots, _ = kernels.aberth([float(c) for c in fn.den.coeffs])
    except (OverflowError, ZeroDivisionError, ValueError):
        return []
    out = set()
    with mpmath.workprec(64):
        num = [mpmath.mpf(c) for c in reversed(fn.num.coeffs)]
        dd = [mpmath.mpf(c) for c in reversed(fn.den.derivative().coeffs)]
        for r in roots:
            z = mpmath.mpc(r)
            q = z * mpmath.polyval(dd, z)
            if not q or not mpmath.isfinite(q):
                continue
            c = mpmath.polyval(num, z) / q
            k = int(mpmath.nint(c.real)) if mpmath.isfinite(c) else None
            if k is not None and abs(c - k) < 0.25:
                out.add(k)
    return sorted(out, key=abs)


def _split_by_weight(fn: RationalFn) -> list:
    """Pieces (V, c) of D with V = gcd(D, num - c z D'), plus (rest, None).

    Every root of V has residue exactly c.  Zassenhaus recombination is
    exponential in the number of modular factors, so factoring the pieces
    separately is much cheaper than factoring D at once.
    """
    z = sympy.Poly(_Z, _Z, domain="ZZ")
    rest = sympy.Poly(list(reversed(fn.den.coeffs)), _Z, domain="ZZ")
    num = sympy.Poly(list(reversed(fn.num.coeffs)), _Z, domain="ZZ")
    zdp = z * rest.diff(_Z)
    pieces = []
    for c in _weight_guesses(fn):
        if rest.degree() <= 0:
            break
        g = rest.gcd(num - c * zdp)
        if g.degree() > 0:
            pieces.append((g, c))
            rest = rest.exquo(g)
    if rest.degree() > 0:
        pieces.append((rest, None))
    return pieces


def _residue(fn: RationalFn, u: IntPoly) -> int:
    """The common residue num / (z D') on the roots of an irreducible u."""
    us = _to_sympy(u)
    # reduce mod u first; inverting the full z D' is far slower for large D
    zdp = _to_sympy(IntPoly([0, 1]) * fn.den.derivative()).rem(us)
    res = (_to_sympy(fn.num).rem(us) * zdp.invert(us)).rem(us)
    if res.degree() > 0:
        raise DecompositionError(f"residues differ across the roots of {u.to_expr('z')}",
                                 witness={"u": u.to_string(), "residue": str(res.as_expr())})
    c = sympy.Rational(res.LC()) if not res.is_zero else sympy.Rational(0)
    if c.q != 1:
        raise DecompositionError(f"non-integer weight {c} for {u.to_expr('z')}",
                                 witness={"u": u.to_string(), "c": str(c)})
    return int(c)


def minton_decompose(fn: RationalFn, check_terms: int = 40) -> MintonDecomposition:
    """Write F = sum c_j z u_j'/u_j with integer c_j and irreducible u_j."""
    if fn.num.is_zero:
        return MintonDecomposition([])
    if fn.num.coeffs[0] != 0:
        raise DomainError("F(0) must vanish")
    if fn.den.degree > 0 and not is_squarefree(fn.den):
        raise DomainError("F must have simple poles only")
    coeffs = fn.series(check_terms)[1:]
    w = gauss_property_witness(coeffs)
    if w is not None:
        raise DecompositionError(f"Taylor coefficients violate the Gauss congruence at n = {w}",
                                 witness={"n": w})
    terms = []
    for piece, weight in _split_by_weight(fn):
        for f, _ in piece.factor_list()[1]:
            u = _from_sympy(f)
            if u.degree == 0:
                continue
            if u.coeffs[0] < 0:
                u = -u
            if u.coeffs[0] != 1:
                raise DecompositionError(f"factor {u.to_expr('z')} cannot be normalized to u(0) = 1",
                                         witness={"u": u.to_string()})
            terms.append((u, _residue(fn, u) if weight is None else weight))
    dec = MintonDecomposition(terms)
    if dec.synthesize() != fn:
        raise ConsistencyError("resynthesized decomposition differs from F")
    return dec


def product_identity_check(p, truncation: int, dec: MintonDecomposition | None = None) -> bool:
    """prod_{n<=T} (1 - z^n)^{r_n} == prod_j u_j^{-c_j} mod z^{T+1}, r_n = delta_n / n."""
    p = as_poly(p)
    if dec is None:
        dec = minton_decompose(rational_fn_of_delta(p).fn)
    T = truncation
    seq = delta_seq(p, T)
    lhs = [1] + [0] * T
    for n in range(1, T + 1):
        dn = seq.delta(n)
        if dn % n:
            raise ConsistencyError(f"r_{n} = delta_{n}/{n} is not an integer")
        factor = [0] * (T + 1)
        factor[0] = 1
        factor[n] = -1
        lhs = series_mul(lhs, series_pow(factor, dn // n, T), T)
    rhs = [1] + [0] * T
    for u, c in dec.terms:
        rhs = series_mul(rhs, series_pow(list(u.coeffs), -c, T), T)
    for k in range(T + 1):
        if lhs[k] != rhs[k]:
            raise ConsistencyError(f"product identity differs at z^{k}: {lhs[k]} != {rhs[k]}")
    return True


def g_quadratic(p) -> RationalFn:
    """g_P(z) = sum b_n z^n = z / (1 + a_1 z + a_0 z^2) for monic quadratic P."""
    p = as_poly(p)
    if p.is_zero or p.degree != 2 or not p.is_monic:
        raise DomainError("g_P is only provided for monic quadratics")
    a0, a1 = p.coeffs[0], p.coeffs[1]
    return RationalFn(IntPoly([0, 1]), IntPoly([1, a1, a0]))


def pole_radius(fn: RationalFn) -> float:
    """Smallest pole modulus R (inf if there are no poles)."""
    poles = fn.poles()
    return min(float(z.modulus) for z in poles) if poles else math.inf

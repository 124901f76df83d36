"""Analytic layer: the confluent Vandermonde determinant, per-n upper
bounds for |Delta(P_n)|, finite-N limsup estimates and the equidistribution
constant.

Limsup statements are asymptotic, so nothing here asserts a limit.  Each
report carries the inequality that holds for every n plus the finite-N
ratio, and leaves the judgement about the trend to the caller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import DomainError, ResourceError
from .polycore import IntPoly, as_poly, is_squarefree, resultant
from .roots import find_roots, hadamard_disc_bound, is_cyclotomic_product, mahler_measure
from .sequences import _log_abs, delta_seq, power_maps

DEFAULT_SIZE_CAP = 64
LOG2 = math.log(2)

hadamard_bound = hadamard_disc_bound


# exact Gaussian rationals, so complex points get an exact determinant

class GaussQ:
    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def of(cls, x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        if hasattr(x, "imag") and not isinstance(x, (int, Fraction)):
            return cls(_frac(x.real), _frac(x.imag))
        return cls(_frac(x))

    def __add__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussQ.of(o)
        n = o.norm()
        return GaussQ((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __pow__(self, e):
        out, base = GaussQ(1), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, o):
        try:
            o = GaussQ.of(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re or self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


def _frac(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if hasattr(x, "man_exp"):  # mpmath mpf: exact binary value
        man, exp = x.man_exp
        return Fraction(man) * Fraction(2) ** exp
    return Fraction(str(x))


@dataclass
class ConfluentResult:
    matrix: list
    determinant: object
    product: object
    equal: bool


def _is_complex(x):
    return isinstance(x, (complex, GaussQ)) or (hasattr(x, "imag") and not isinstance(x, (int, Fraction, float))
                                               and x.imag != 0)


def _block(x, m, n, one, zero):
    """n x m block: column k holds C(j, k) x^{j-k} in row j (0-based)."""
    pw = [one]
    for _ in range(n):
        pw.append(pw[-1] * x)
    return [[comb(j, k) * pw[j - k] if j >= k else zero for k in range(m)] for j in range(n)]


def _size(x):
    return x.norm() if isinstance(x, GaussQ) else abs(x)


def exact_det(matrix) -> object:
    """Gaussian elimination over an exact field.  Pivot: first row with the
    largest exact absolute value (norm for complex entries)."""
    a = [list(r) for r in matrix]
    n = len(a)
    det = None
    sign = 1
    for col in range(n):
        best = max(range(col, n), key=lambda r: (_size(a[r][col]), -r))
        if not a[best][col]:
            return a[0][0] * 0
        if best != col:
            a[col], a[best] = a[best], a[col]
            sign = -sign
        piv = a[col][col]
        det = piv if det is None else det * piv
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / piv
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
    if det is None:
        return 1
    return det if sign > 0 else -det


def confluent_vandermonde(points, size_cap: int = DEFAULT_SIZE_CAP) -> ConfluentResult:
    """Concatenated confluent Vandermonde matrix for [(x, multiplicity)],
    its exact determinant and prod_{j<k} (x_k - x_j)^{m_j m_k}."""
    pts = list(points)
    if not pts:
        raise DomainError("need at least one point")
    if any(m < 1 for _, m in pts):
        raise DomainError("multiplicities must be positive")
    n = sum(m for _, m in pts)
    if n > size_cap:
        raise ResourceError(f"matrix size {n} exceeds cap {size_cap}")
    cplx = any(_is_complex(x) for x, _ in pts)
    if cplx:
        xs = [GaussQ.of(x) for x, _ in pts]
        one, zero = GaussQ(1), GaussQ(0)
    else:
        xs = [_frac(x) for x, _ in pts]
        one, zero = Fraction(1), Fraction(0)
    ms = [m for _, m in pts]
    blocks = [_block(x, m, n, one, zero) for x, m in zip(xs, ms)]
    mat = [sum((b[j] for b in blocks), []) for j in range(n)]
    det = exact_det(mat)
    prod = one
    for k in range(len(xs)):
        for j in range(k):
            prod = prod * (xs[k] - xs[j]) ** (ms[j] * ms[k])
    return ConfluentResult(mat, det, prod, det == prod)


def confluent_vandermonde_symbolic(k: int, s: int) -> bool:
    """Identity for one point of multiplicity k plus s simple points, with
    all points as independent symbols."""
    import sympy

    y = sympy.Symbol("y")
    xs = sympy.symbols(f"x1:{s + 1}")
    pts = [(y, k)] + [(x, 1) for x in xs]
    n = k + s
    cols = []
    for x, m in pts:
        for c in range(m):
            cols.append([sympy.binomial(j, c) * x ** (j - c) if j >= c else 0 for j in range(n)])
    mat = sympy.Matrix(n, n, lambda j, c: cols[c][j])
    prod = sympy.Integer(1)
    for b in range(len(pts)):
        for a in range(b):
            prod *= (pts[b][0] - pts[a][0]) ** (pts[a][1] * pts[b][1])
    return sympy.expand(mat.det(method="berkowitz") - prod) == 0


# |Delta(P_n)| bounds and limsup estimates

def _monic_squarefree(p):
    p = as_poly(p)
    if p.is_zero or not p.is_monic or p.degree < 2:
        raise DomainError("expected a monic polynomial of degree >= 2")
    if not is_squarefree(p):
        raise DomainError("polynomial has multiple roots")
    return p


def _log_moduli(p, precision=1e-20):
    """Roots sorted by descending modulus: (log upper, log lower) per root."""
    rs = find_roots(p, precision)
    out = []
    for r in rs.roots:
        m, e = float(r.modulus), float(r.radius)
        hi = math.log(m + e) if m + e > 0 else float("-inf")
        lo = math.log(m - e) if m > e else float("-inf")
        out.append((hi, lo))
    return sorted(out, key=lambda t: -t[0])


@dataclass
class LimsupReport:
    N: int
    E: float  # max_{n<=N} |Delta(P_n)|^{1/n}
    T: float  # prod |alpha_j|^{2(d-j)}
    ratio: float
    upper_bound_ok: list  # per n: |Delta| <= 2^{d(d-1)} prod |alpha_j|^{2n(d-j)}
    lower_chain_ok: bool  # T >= M^d |a0|^{d-m-1}
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.upper_bound_ok)


def limsup_delta_estimate(p, N: int, precision=1e-20) -> LimsupReport:
    p = _monic_squarefree(p)
    d = p.degree
    logs = _log_moduli(p, precision)
    vals = delta_seq(p, N).values
    # T from midpoints, the per-n check from upper ends; the last root has
    # exponent 0 and is skipped so that a zero root stays out of the sum
    log_t_hi = sum(2 * (d - 1 - j) * hi for j, (hi, _) in enumerate(logs[:-1]))
    log_t_lo = sum(2 * (d - 1 - j) * lo for j, (_, lo) in enumerate(logs[:-1]))
    log_t = (log_t_hi + log_t_lo) / 2 if math.isfinite(log_t_lo) else log_t_hi
    ok = []
    best = float("-inf")
    for n in range(1, N + 1):
        la = _log_abs(vals[n])
        ok.append(la <= d * (d - 1) * LOG2 + n * log_t_hi + 1e-9 * max(1.0, abs(la)))
        if vals[n]:
            best = max(best, la / n)
    E = math.exp(best) if math.isfinite(best) else 0.0
    T = math.exp(log_t)
    m = mahler_measure(p, 1e-15)
    outside = sum(1 for hi, lo in logs if lo > 0)
    a0 = abs(p.coeffs[0])
    k = d - outside - 1
    chain_rhs = d * math.log(float(m.lower)) + (k * math.log(a0) if a0 else (0.0 if k == 0 else float("-inf")))
    return LimsupReport(N, E, T, E / T, ok, log_t_hi >= chain_rhs - 1e-9,
                        {"roots_outside": outside})


@dataclass
class SandwichReport:
    N: int
    per_n_ok: list
    exceeded: bool  # max |Delta(P_n)|^{1/n} > M^{d-1} for some n <= N
    first_exceeding_n: int | None
    measure: float

    @property
    def passed(self) -> bool:
        return all(self.per_n_ok)


def sandwich_check(p, N: int) -> SandwichReport:
    """|Delta(P_n)| <= d^d M^{2nd} per n, plus the exceedance flag."""
    p = _monic_squarefree(p)
    if is_cyclotomic_product(p):
        raise DomainError("sandwich_check needs a noncyclotomic polynomial")
    d = p.degree
    m = mahler_measure(p, 1e-15)
    log_hi = math.log(float(m.upper))
    log_lo = math.log(float(m.lower))
    vals = delta_seq(p, N).values
    ok, first = [], None
    for n in range(1, N + 1):
        la = _log_abs(vals[n])
        ok.append(la <= d * math.log(d) + 2 * n * d * log_hi + 1e-12 * max(1.0, abs(la)))
        if first is None and vals[n] and la / n > (d - 1) * log_hi + 1e-12:
            first = n
    return SandwichReport(N, ok, first is not None, first, float(m.value))


@dataclass
class ResultantEstimate:
    N: int
    E: float
    target: float
    ratio: float
    values: list


def limsup_resultant_estimate(p, q, N: int) -> ResultantEstimate:
    """max_{n<=N} |Res(P_n, Q)|^{1/n} against M(P)^{deg Q}."""
    p, q = as_poly(p), as_poly(q)
    for f in (p, q):
        if f.is_zero or not f.is_monic:
            raise DomainError("P and Q must be monic")
    if q.coeffs[0] == 0:
        raise DomainError("Q(0) must be nonzero")
    if p(1) == 0 and q(1) == 0:
        raise DomainError("P(1) and Q(1) both vanish")
    maps = power_maps(p, N)
    vals = [None] + [resultant(maps[n], q) for n in range(1, N + 1)]
    best = max((_log_abs(v) / n for n, v in enumerate(vals) if n and v), default=float("-inf"))
    E = math.exp(best) if math.isfinite(best) else 0.0
    target = float(mahler_measure(p, 1e-15).value) ** q.degree
    return ResultantEstimate(N, E, target, E / target, vals)


@dataclass
class EquidistributionReport:
    delta: Fraction
    achieving: list
    nonempty: bool


def _dist_to_int(x):
    f = x - math.floor(x)
    return min(f, 1 - f)


def equidistribution_delta(angles, N: int) -> EquidistributionReport:
    """All n <= N with min_j ||n x_j|| > 1/(3m)."""
    xs = list(angles)
    m = len(xs)
    if m == 0:
        raise DomainError("need at least one angle")
    fr = [_frac(x) if isinstance(x, (int, Fraction)) else x for x in xs]
    if len({(x - math.floor(x)) for x in fr}) != m:
        raise DomainError("angles must be distinct modulo 1")
    delta = Fraction(1, 3 * m)
    hits = [n for n in range(1, N + 1) if min(_dist_to_int(n * x) for x in fr) > delta]
    return EquidistributionReport(delta, hits, bool(hits))

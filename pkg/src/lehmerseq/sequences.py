"""Integer sequences attached to a monic P and their arithmetic properties.

Delta(P_n) (discriminants of power maps), U(n) = Res(P_{D+(n)}, P_{D-(n)}),
delta_n = Moebius transform of Delta(P_n), the essential factors Psi_n,
Lehmer's Delta_n and the quadratic b_n.  Every verifier returns a report
object; reports carry exact integers and only ever round when a certified
enclosure makes the rounding a proof.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd, isqrt

from .errors import ConsistencyError, DomainError, ResourceError
from .modpoly import is_squarefree_mod, order_in_quotient as _order_in_quotient
from .modpoly import x_power_is_one
from .numtheory import divisor_table, divisors, factorize, lcm, mobius, radical, totient
from .polycore import (IntPoly, as_poly, cyclotomic, discriminant, interpolate, is_squarefree,
                       multiset_poly, power_map, power_sums, resultant)

DEFAULT_DEGREE_CAP = 64


def _monic(p, min_degree=1):
    p = as_poly(p)
    if p.is_zero or not p.is_monic:
        raise DomainError(f"expected a monic polynomial, got {p}")
    if p.degree < min_degree:
        raise DomainError(f"degree must be >= {min_degree}")
    return p


def _sign(x):
    return (x > 0) - (x < 0)


# reports

@dataclass
class GaussRecord:
    n: int
    lhs: int
    quotient: int | None
    verdict: str
    detail: tuple = ()


@dataclass
class GaussReport:
    """Per-n verdicts for sum_{m|n} mu(n/m) a_m == 0 (mod n)."""

    polynomial: str
    family: str
    N: int
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.verdict == "pass" for r in self.records)

    def failures(self) -> list:
        return [r.n for r in self.records if r.verdict != "pass"]

    def to_json(self, factor_work: int = 1 << 14) -> dict:
        recs = []
        for r in self.records:
            f = factorize(r.lhs, work=factor_work)
            rec = {
                "n": r.n,
                "value": str(r.lhs),
                "factorization": {"sign": f.sign, "factors": [[str(p), e] for p, e in f.factors]},
                "verdict": r.verdict,
            }
            if f.cofactor != 1:
                rec["factorization"]["composite_cofactor"] = str(f.cofactor)
            if r.quotient is not None:
                rec["quotient"] = str(r.quotient)
            recs.append(rec)
        return {"polynomial": self.polynomial, "family": self.family,
                "range": [1, self.N], "records": recs, "pass": self.passed}


def gauss_report(values, family: str, polynomial: str = "", N: int | None = None) -> GaussReport:
    """Gauss-congruence report for values[1..N] (values[0] ignored)."""
    N = len(values) - 1 if N is None else N
    rep = GaussReport(polynomial, family, N)
    for n in range(1, N + 1):
        lhs = sum(mu * values[m] for m, mu in divisor_table(n).entries if mu)
        ok = lhs % n == 0
        rep.records.append(GaussRecord(n, lhs, lhs // n if ok else None, "pass" if ok else "fail"))
    return rep


# Delta(P_n)

@dataclass
class DeltaSequence:
    poly: IntPoly
    values: list  # values[n] = Delta(P_n), index 0 unused

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def delta(self, n: int) -> int:
        """delta_n(P) = sum_{m|n} mu(n/m) Delta(P_m)."""
        return sum(mu * self.values[m] for m, mu in divisor_table(n).entries if mu)

    def deltas(self) -> list:
        return [None] + [self.delta(n) for n in range(1, self.N + 1)]

    def psi(self) -> list:
        """Psi_n by divisor-lattice division.

        When the division is 0/0 (some Delta(P_m) vanishes) Psi_n comes from
        the resultant formula instead; None only if that is unavailable
        too (P(0) = 0).  Raises ConsistencyError if a division is not exact
        or the product identity fails.
        """
        out = [None] * (self.N + 1)
        for n in range(1, self.N + 1):
            num = self.values[n]
            parts = [out[m] for m in divisors(n)[:-1]]
            den = 1
            for v in parts:
                den = None if v is None or den is None else den * v
            if den:
                q, r = divmod(num, den)
                if r:
                    raise ConsistencyError(f"Psi_{n}: Delta(P_{n}) not divisible by prod of Psi_m")
                out[n] = q
                continue
            if den == 0 and num != 0:
                raise ConsistencyError(f"Psi_{n}: nonzero Delta over a vanishing product")
            out[n] = psi_direct(self.poly, n) if n > 1 and self.poly.coeffs[0] else None
            if den is not None and out[n] is not None and den * out[n] != num:
                raise ConsistencyError(f"Psi_{n}: product identity fails")
        return out


def power_maps(p: IntPoly, N: int) -> list:
    """[None, P_1, ..., P_N] sharing one power-sum table."""
    sums = power_sums(p, N * p.degree)
    return [None] + [power_map(p, n, sums) for n in range(1, N + 1)]


def delta_seq(p, N: int, maps: list | None = None) -> DeltaSequence:
    p = _monic(p, 2)
    maps = maps or power_maps(p, N)
    return DeltaSequence(p, [None] + [discriminant(maps[n]) for n in range(1, N + 1)])


def gauss_check_coefficients(p, N: int, maps: list | None = None) -> GaussReport:
    """n | sum_{m|n} mu(n/m) [x^k] P_m for every coefficient index k."""
    p = _monic(p)
    d = p.degree
    maps = maps or power_maps(p, N)
    rep = GaussReport(p.to_string(), "coefficients of P_n", N)
    for n in range(1, N + 1):
        ent = [(m, mu) for m, mu in divisor_table(n).entries if mu]
        sums = tuple(sum(mu * maps[m][k] for m, mu in ent) for k in range(d + 1))
        bad = [s for s in sums if s % n]
        lhs = bad[0] if bad else max(sums, key=abs)
        rep.records.append(GaussRecord(n, lhs, None if bad else lhs // n,
                                       "fail" if bad else "pass", sums))
    return rep


def gauss_check_delta(p, N: int, seq: DeltaSequence | None = None) -> GaussReport:
    seq = seq or delta_seq(p, N)
    return gauss_report(seq.values, "discriminant Delta(P_n)", seq.poly.to_string(), N)


def resultant_seq(p, q, N: int, maps: list | None = None) -> list:
    p, q = _monic(p), _monic(q)
    maps = maps or power_maps(p, N)
    return [None] + [resultant(maps[n], q) for n in range(1, N + 1)]


def gauss_check_resultant(p, q, N: int, maps: list | None = None) -> GaussReport:
    p, q = _monic(p), _monic(q)
    vals = resultant_seq(p, q, N, maps)
    return gauss_report(vals, f"resultant Res(P_n, {q.to_expr()})", p.to_string(), N)


def gauss_suite(p, qs, N: int) -> list:
    """All congruence families for one P, sharing the power maps."""
    p = _monic(p)
    maps = power_maps(p, N)
    out = [gauss_check_coefficients(p, N, maps)]
    if p.degree >= 2:
        out.append(gauss_check_delta(p, N, delta_seq(p, N, maps)))
    out.extend(gauss_check_resultant(p, q, N, maps) for q in qs)
    return out


# U(n)

def u_structure(n: int):
    """(l, r, D+ descending, D- ascending) for n > 1."""
    if n < 2:
        raise DomainError("U(n) needs n > 1")
    tab = divisor_table(n)
    l = len(factorize(n).factors)
    return l, 2 ** (l - 1), sorted(tab.d_plus, reverse=True), sorted(tab.d_minus)


def u_of_n(p, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """U(n) = Res(P_{D+(n)}, P_{D-(n)}), exact."""
    p = _monic(p)
    l, r, dp, dm = u_structure(n)
    size = p.degree**r
    if size > degree_cap:
        raise ResourceError(f"U({n}) needs degree d^r = {p.degree}^{r} = {size} > cap {degree_cap}")
    return resultant(multiset_poly(p, dp), multiset_poly(p, dm))


@dataclass
class Verdict:
    name: str
    passed: bool | None  # None: hypothesis not met / inapplicable
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name,
                "verdict": "pass" if self.passed else ("inapplicable" if self.passed is None else "fail"),
                **{k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                   for k, v in self.detail.items()}}


def u_divisibility_check(p, n: int, degree_cap: int = DEFAULT_DEGREE_CAP, u: int | None = None):
    """n^{d^r} | U(n), plus m^{d^r} | U(n) for every m | n coprime to a_0."""
    p = _monic(p)
    l, r, _, _ = u_structure(n)
    if u is None:
        u = u_of_n(p, n, degree_cap)
    e = p.degree**r
    main = Verdict("n^(d^r) | U(n)", u % n**e == 0, {"n": n, "exponent": e, "U": u})
    extra = []
    a0 = p.coeffs[0]
    for m in divisors(n)[1:]:
        if gcd(m, a0) == 1:
            extra.append(Verdict(f"{m}^(d^r) | U(n)", u % m**e == 0, {"m": m, "exponent": e}))
    return main, extra


def a0_power_exponent(d: int, n: int) -> int:
    """n' 2^{2(l-1)} d^{2^l - 2} with n' = n / rad(n)."""
    l = len(factorize(n).factors)
    return (n // radical(n)) * 2 ** (2 * (l - 1)) * d ** (2**l - 2)


def a0_power_divisibility(p, n: int, degree_cap: int = DEFAULT_DEGREE_CAP, u: int | None = None) -> Verdict:
    """a0^{n' 2^{2(l-1)} d^{2^l-2}} | U(n).  For a prime power n = q^k the
    formula is applied literally and q^{kd} | U(n) must hold as well."""
    p = _monic(p)
    if u is None:
        u = u_of_n(p, n, degree_cap)
    a0 = p.coeffs[0]
    e = a0_power_exponent(p.degree, n)
    detail = {"a0": a0, "exponent": e, "U": u}
    ppc = True
    fac = factorize(n)
    if len(fac.factors) == 1:
        q, k = fac.factors[0]
        ppc = u % q ** (k * p.degree) == 0
        detail["prime_power_check"] = ppc
    if abs(a0) == 1:
        return Verdict("a0-power | U(n)", ppc, {**detail, "note": "|a0| = 1, trivially"})
    if a0 == 0:
        return Verdict("a0-power | U(n)", u == 0 and ppc, detail)
    return Verdict("a0-power | U(n)", u % a0**e == 0 and ppc, detail)


def u_upper_bound_check(p, n: int, degree_cap: int = DEFAULT_DEGREE_CAP, u: int | None = None,
                        measure=None) -> Verdict:
    """|U(n)| <= 2^{d^{2^l}} M^{d^{2^l} sum D+}, compared in logarithms."""
    from .roots import mahler_measure

    p = _monic(p)
    l, _, dp, _ = u_structure(n)
    if u is None:
        u = u_of_n(p, n, degree_cap)
    m = measure or mahler_measure(p, 1e-15)
    big = p.degree ** (2**l)
    rhs_log = big * (math.log(2) + sum(dp) * math.log(float(m.upper) * (1 + 1e-15)))
    lhs_log = _log_abs(u)
    return Verdict("|U(n)| <= bound", lhs_log <= rhs_log + 1e-9,
                   {"U": u, "log_lhs": lhs_log, "log_rhs": rhs_log})


def _log_abs(x: int) -> float:
    if x == 0:
        return float("-inf")
    x = abs(x)
    b = x.bit_length()
    if b < 1000:
        return math.log(x)
    return math.log(x >> (b - 60)) + (b - 60) * math.log(2)


def dobrowolski_check(p, primes) -> list:
    """Res(P_p, P) != 0 and p^d | Res(P_p, P) for each prime p."""
    p = _monic(p)
    out = []
    for q in primes:
        r = resultant(power_map(p, q), p)
        out.append(Verdict(f"p^d | Res(P_{q}, P)", r != 0 and r % q**p.degree == 0,
                           {"p": q, "value": r, "nonzero": r != 0}))
    return out


# torsion ratios: Delta(P_n) = 0 iff alpha_j^n = alpha_k^n for some j != k

def ratio_polynomial(p: IntPoly) -> IntPoly:
    """R(x) = Res_y(P(y), P(x y)) = a0^d prod_{j,k} (x - alpha_j/alpha_k), up to sign."""
    d = p.degree
    vals = []
    for c in range(d * d + 1):
        g = IntPoly(a * c**i for i, a in enumerate(p.coeffs))
        vals.append(resultant(p, g) if not g.is_zero else 0)
    return interpolate(vals)


def torsion_orders(p) -> tuple:
    """Orders n > 0 of the roots of unity among alpha_j/alpha_k (j != k).

    Delta(P_m) = 0 exactly when one of the returned orders divides m;
    order 1 means P has a repeated root.
    """
    p = _monic(p)
    zeros = next(k for k, c in enumerate(p.coeffs) if c)
    if zeros >= 2:
        return (1,)
    q = IntPoly(p.coeffs[zeros:])
    if q.degree < 2:
        return ()
    r = ratio_polynomial(q)
    d = q.degree
    one = IntPoly([-1, 1])
    for _ in range(d):
        r, rem = r.divmod_monic(one) if r.lc in (1, -1) else (r.exact_div(one), IntPoly())
        if not rem.is_zero:
            raise ConsistencyError("ratio polynomial lacks the diagonal factor")
    r = r.primitive()
    found = []
    bound = d * (d - 1)
    n = 1
    while n <= 2 * bound * bound:
        if totient(n) <= bound and cyclotomic(n).divides(r):
            found.append(n)
        n += 1
    return tuple(found)


# delta_n and its theorems

@dataclass
class SmallDeltaReport:
    poly: IntPoly
    N: int
    deltas: list
    divisibility: list
    sign_verdict: str  # pass / fail / inapplicable
    zero_witness: int | None
    n0: int
    abs_sum_identity: bool
    torsion: tuple
    range_limited: bool = True

    @property
    def passed(self) -> bool:
        return all(self.divisibility) and self.sign_verdict != "fail" and self.abs_sum_identity


def small_delta(p, N: int, seq: DeltaSequence | None = None) -> SmallDeltaReport:
    seq = seq or delta_seq(p, N)
    p = seq.poly
    dl = seq.deltas()
    divis = [dl[n] % n == 0 for n in range(1, N + 1)]
    zero = next((n for n in range(1, N + 1) if seq.values[n] == 0), None)
    tors = torsion_orders(p)
    if zero is not None:
        verdict = "inapplicable"
        abs_ok = True
    else:
        s = _sign(seq.values[1])
        ok = all(_sign(seq.values[n]) == s for n in range(1, N + 1))
        ok = ok and all(dl[n] == 0 or _sign(dl[n]) == s for n in range(1, N + 1))
        verdict = "pass" if ok else "fail"
        abs_ok = all(abs(seq.values[n]) == sum(abs(dl[m]) for m in divisors(n)) for n in range(1, N + 1))
    n0 = max((n for n in range(1, N + 1) if dl[n] % 12), default=0)
    return SmallDeltaReport(p, N, dl, divis, verdict, zero, n0, abs_ok, tors)


def delta_pk_monotonicity(p, prime: int, k: int, N: int) -> list:
    """|delta_n(P_{p^k})| >= |delta_n(P_{p^{k-1}})| for n <= N, p not | n,
    with the identity delta_{n p^k}(P) = delta_n(P_{p^k}) - delta_n(P_{p^{k-1}})."""
    p = _monic(p, 2)
    hi, lo = prime**k, prime ** (k - 1)
    seq = delta_seq(p, N * hi)
    seq_hi = delta_seq(power_map(p, hi), N)
    seq_lo = delta_seq(power_map(p, lo), N)
    out = []
    for n in range(1, N + 1):
        if n % prime == 0:
            continue
        if any(seq.values[m] == 0 for m in range(1, n * hi + 1)):
            out.append(Verdict(f"monotonicity n={n}", None, {"n": n, "reason": "some Delta(P_m) = 0"}))
            continue
        a, b = seq_hi.delta(n), seq_lo.delta(n)
        ident = seq.delta(n * hi) == a - b
        if not ident:
            raise ConsistencyError(f"delta_(n p^k) identity failed at n={n}")
        out.append(Verdict(f"monotonicity n={n}", abs(a) >= abs(b),
                           {"n": n, "delta_hi": a, "delta_lo": b, "identity": ident}))
    return out


# essential factors

@dataclass
class EssentialFactors:
    poly: IntPoly
    psi: list  # psi[m], index 0 unused
    roots: list  # integer square roots for m >= 2 (None when not a square)
    psi1_is_disc: bool

    @property
    def all_squares(self) -> bool:
        return all(r is not None for r in self.roots[2:])


def essential_factors(p, N: int, seq: DeltaSequence | None = None) -> EssentialFactors:
    seq = seq or delta_seq(p, N)
    p = seq.poly
    if not is_squarefree(p):
        raise DomainError("essential_factors requires a squarefree polynomial")
    psi = seq.psi()
    roots = [None, None]
    for m in range(2, N + 1):
        v = psi[m]
        if v is None or v < 0:
            roots.append(None)
            continue
        s = isqrt(v)
        roots.append(s if s * s == v else None)
    return EssentialFactors(p, psi, roots, psi[1] == discriminant(p))


def _homogeneous_cyclotomic(n: int, x: int):
    """Coefficients (ascending in y) of y^phi Phi_n(x/y) at integer x."""
    phi = cyclotomic(n)
    e = phi.degree
    return IntPoly(phi.coeffs[e - i] * x ** (e - i) for i in range(e + 1))


def psi_direct(p, n: int) -> int:
    """Psi_n(P) for n >= 2 from resultants, independent of Delta(P_n)."""
    p = _monic(p, 2)
    if n < 2:
        raise DomainError("psi_direct needs n >= 2")
    d = p.degree
    ph = totient(n)
    vals = []
    for c in range(d * ph + 1):
        vals.append(resultant(p, _homogeneous_cyclotomic(n, c)))
    r = interpolate(vals)
    num = resultant(p, r) if not r.is_zero else 0
    fac = factorize(n).factors
    phi1 = fac[0][0] if len(fac) == 1 else 1
    den = ((-1) ** d * p.coeffs[0]) ** ph * phi1**d
    if den == 0:
        raise DomainError("psi_direct needs P(0) != 0")
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError("psi_direct: non-exact division")
    return q


# characteristic primes

@dataclass
class CharacteristicPrime:
    p: int
    k: int
    residue_ok: bool | None
    divides_psi: bool | None
    status: str  # characteristic / unknown


def characteristic_primes(p, n: int, seq: DeltaSequence | None = None, work: int = 1 << 18):
    """Primes of Delta(P_n) dividing no Delta(P_m), m a proper divisor of n.

    Returns (list of CharacteristicPrime, degenerate flag for n = 1).
    """
    seq = seq or delta_seq(p, n)
    if seq.N < n:
        seq = delta_seq(seq.poly, n)
    val = seq.values[n]
    if val == 0:
        raise DomainError(f"Delta(P_{n}) = 0")
    fac = factorize(val, work=work)
    proper = [m for m in divisors(n) if m < n]
    psi_n = None
    try:
        psi_n = seq.psi()[n]
    except ConsistencyError:
        psi_n = None
    out = []
    for q, k in fac.factors:
        if any(seq.values[m] % q == 0 for m in proper):
            continue
        out.append(CharacteristicPrime(q, k, pow(q, k, n) == 1 % n,
                                       None if psi_n is None else psi_n % q == 0, "characteristic"))
    if fac.cofactor != 1:
        c = fac.cofactor
        if all(gcd(seq.values[m], c) == 1 for m in proper):
            out.append(CharacteristicPrime(c, 1, None, None, "unknown"))
    return out, n == 1


# orders in Z[x]/(m, P)

def order_in_quotient(p, m: int):
    """Orders of x in Z[x]/(q^e, P) for each q^e || m and M = their lcm."""
    p = _monic(p)
    a0 = p.coeffs[0]
    for q, _ in factorize(m).factors:
        if a0 % q == 0:
            raise DomainError(f"prime {q} divides a_0; x is not a unit")
        if not is_squarefree_mod(p, q):
            raise DomainError(f"polynomial is not squarefree modulo the prime {q}")
    return _order_in_quotient(p, m)


def predicted_disc_divisibility(p, m: int) -> Verdict:
    """M = order of x in Z[x]/(m, P); checks m^{d(d-1)} | Delta(P_M)."""
    p = _monic(p, 2)
    comps, M = order_in_quotient(p, m)
    d = p.degree
    val = discriminant(power_map(p, M))
    e = d * (d - 1)
    v = 0
    x = val
    while x and x % m == 0:
        x //= m
        v += 1
    return Verdict("m^(d(d-1)) | Delta(P_M)", val % m**e == 0,
                   {"m": m, "M": M, "exponent": e, "Delta": val, "valuation": v if val else None,
                    "components": [{"modulus": c["modulus"], "order": c["order"]} for c in comps]})


# U(n, partition)

def set_partitions(k: int) -> list:
    """All partitions of {1..k}, as tuples of sorted tuples, in restricted
    growth order (the one-block partition first)."""
    out = []

    def rec(i, rgs, blocks):
        if i == k:
            parts = [[] for _ in range(blocks)]
            for pos, b in enumerate(rgs):
                parts[b].append(pos + 1)
            out.append(tuple(tuple(b) for b in parts))
            return
        for b in range(blocks + 1):
            rec(i + 1, rgs + [b], max(blocks, b + 1))

    rec(0, [], 0)
    return out


class _Ball:
    """Complex disk (center, radius) with outward-rounded arithmetic."""

    __slots__ = ("c", "r", "ctx")

    def __init__(self, ctx, c, r):
        self.ctx, self.c, self.r = ctx, c, r

    def _eps(self, z):
        return abs(z) * self.ctx.mpf(2) ** (3 - self.ctx.prec)

    def __mul__(self, o):
        c = self.c * o.c
        r = abs(self.c) * o.r + self.r * abs(o.c) + self.r * o.r
        return _Ball(self.ctx, c, r + self._eps(c) + self._eps(r))

    def __sub__(self, o):
        c = self.c - o.c
        return _Ball(self.ctx, c, self.r + o.r + self._eps(c) + self._eps(self.r + o.r))

    def pow(self, e):
        out = _Ball(self.ctx, self.ctx.mpc(1), self.ctx.mpf(0))
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out


def _partition_value(ctx, balls, blocks, exps_plus, exps_minus, r):
    from itertools import permutations

    d = len(balls)
    nb = len(blocks)
    pos_block = {}
    for b, blk in enumerate(blocks):
        for s in blk:
            pos_block[s] = b
    # per block, the exponent it carries on the plus side and the minus side
    plus = [0] * nb
    minus = [0] * nb
    for s in range(1, 2 * r + 1):
        b = pos_block[s]
        if s <= r:
            plus[b] += exps_plus[s - 1]
        else:
            minus[b] += exps_minus[s - r - 1]
    powers = {}

    def pw(j, e):
        key = (j, e)
        if key not in powers:
            powers[key] = balls[j].pow(e)
        return powers[key]

    one = _Ball(ctx, ctx.mpc(1), ctx.mpf(0))
    total = one
    for assign in permutations(range(d), nb):
        a = one
        b = one
        for blk in range(nb):
            if plus[blk]:
                a = a * pw(assign[blk], plus[blk])
            if minus[blk]:
                b = b * pw(assign[blk], minus[blk])
        total = total * (a - b)
    return total


def u_partition_factors(p, n: int, precision=1e-30, degree_cap: int = DEFAULT_DEGREE_CAP,
                        max_bits: int = 1 << 15):
    """[(partition, U(n, partition))] with the exact product identity checked.

    Each factor is an integer; it is evaluated in ball arithmetic from
    certified roots and rounded only when the ball radius is below 1/4.
    Partitions with more blocks than roots give empty products and are
    omitted.
    """
    from .roots import find_roots

    p = _monic(p)
    if not is_squarefree(p):
        raise DomainError("u_partition_factors requires a squarefree polynomial")
    l, r, dp, dm = u_structure(n)
    if l > 2:
        raise DomainError("u_partition_factors supports at most two distinct prime factors")
    u = u_of_n(p, n, degree_cap)
    d = p.degree
    parts = [b for b in set_partitions(2 * r) if len(b) <= d]
    target = float(precision)
    bits = 128
    from mpmath.ctx_mp import MPContext

    while True:
        rs = find_roots(p, target)
        ctx = MPContext()
        ctx.prec = max(bits, rs.precision_bits)
        balls = [_Ball(ctx, ctx.mpc(z.re, z.im), ctx.mpf(z.radius)) for z in rs.roots]
        out = []
        ok = True
        for blocks in parts:
            v = _partition_value(ctx, balls, blocks, dp, dm, r)
            if v.r >= 0.25 or abs(v.c.imag) + v.r >= 0.5:
                ok = False
                break
            out.append((blocks, int(ctx.nint(v.c.real))))
        if ok:
            break
        bits *= 2
        target = target**2 if target < 1 else 1e-30
        if bits > max_bits:
            raise ResourceError("partition factors need more precision than allowed")
    prod = 1
    for _, v in out:
        prod *= v
    if prod != u:
        raise ConsistencyError(f"prod U(n, P) = {prod} differs from U({n}) = {u}")
    return out, u


# divisibility by small primes

def _irreducible_factors(p: IntPoly) -> list:
    import sympy

    x = sympy.Symbol("x")
    _, facs = sympy.factor_list(sympy.Poly(list(reversed(p.coeffs)), x))
    return [IntPoly(reversed([int(c) for c in f.all_coeffs()])) for f, _ in facs]


def root_orders(p, k: int) -> list:
    """For each irreducible factor F of P over Z: the order of x in
    Z[x]/(k, F), i.e. the order of its roots modulo k."""
    p = _monic(p)
    out = []
    for f in _irreducible_factors(p):
        _, M = _order_in_quotient(f, k)
        out.append((f, M))
    return out


def u_small_prime_divisibility(p, k: int, n: int, degree_cap: int = DEFAULT_DEGREE_CAP,
                               u: int | None = None) -> list:
    """(i) group exponent | phi(n) => k^d | U(n); (ii) some root order | phi(n)
    => k | U(n); (iii) P(1) != 0 => P(1) | U(n)."""
    p = _monic(p)
    if u is None:
        u = u_of_n(p, n, degree_cap)
    d = p.degree
    ph = totient(n)
    out = []
    if abs(p.coeffs[0]) != 1:
        reason = {"reason": "|a0| != 1"}
        out.append(Verdict("k^d | U(n)", None, reason))
        out.append(Verdict("k | U(n)", None, reason))
    else:
        bad = [q for q, _ in factorize(k).factors if not is_squarefree_mod(p, q)]
        if bad:
            reason = {"reason": f"not squarefree modulo {bad[0]}"}
            out.append(Verdict("k^d | U(n)", None, reason))
            out.append(Verdict("k | U(n)", None, reason))
        else:
            _, M = _order_in_quotient(p, k)
            if ph % M == 0:
                out.append(Verdict("k^d | U(n)", u % k**d == 0, {"k": k, "exponent": M, "phi": ph}))
            else:
                out.append(Verdict("k^d | U(n)", None, {"k": k, "exponent": M, "phi": ph,
                                                        "reason": "exponent does not divide phi(n)"}))
            orders = root_orders(p, k)
            hit = [m for _, m in orders if ph % m == 0]
            if hit:
                out.append(Verdict("k | U(n)", u % k == 0, {"k": k, "orders": [m for _, m in orders]}))
            else:
                out.append(Verdict("k | U(n)", None, {"k": k, "orders": [m for _, m in orders],
                                                      "reason": "no root order divides phi(n)"}))
    p1 = p(1)
    if abs(p.coeffs[0]) != 1:
        out.append(Verdict("P(1) | U(n)", None, {"reason": "|a0| != 1"}))
    elif p1 == 0:
        out.append(Verdict("P(1) | U(n)", u == 0, {"P(1)": 0, "note": "P(1) = 0 forces U(n) = 0"}))
    else:
        out.append(Verdict("P(1) | U(n)", u % p1 == 0, {"P(1)": p1}))
    return out


# Lehmer's Delta_n and quadratic b_n

def lehmer_delta(p, N: int):
    """([None, Delta_1, ..., Delta_N], max_n |Delta_n|^{1/n})."""
    p = _monic(p)
    maps = power_maps(p, N)
    one = IntPoly([-1, 1])
    vals = [None] + [resultant(maps[n], one) for n in range(1, N + 1)]
    best = max((math.exp(_log_abs(vals[n]) / n) if vals[n] else 0.0) for n in range(1, N + 1))
    return vals, best


def b_seq_quadratic(p, N: int) -> list:
    """[None, b_1, ..., b_N], checked against b_n^2 = Delta(P_n) / Delta(P)."""
    p = as_poly(p)
    if p.is_zero or p.degree != 2:
        raise DomainError("b_seq_quadratic needs a quadratic")
    if not p.is_monic:
        raise DomainError("b_seq_quadratic needs a monic polynomial")
    a0, a1 = p.coeffs[0], p.coeffs[1]
    disc = discriminant(p)
    if disc == 0:
        raise DomainError("b_seq_quadratic needs Delta(P) != 0")
    b = [None, 1]
    if N >= 2:
        b.append(-a1)
    for n in range(3, N + 1):
        b.append(-a1 * b[n - 1] - a0 * b[n - 2])
    b = b[: N + 1]
    seq = delta_seq(p, N)
    for n in range(1, N + 1):
        if b[n] ** 2 * disc != seq.values[n]:
            raise ConsistencyError(f"b_{n}^2 != Delta(P_{n}) / Delta(P)")
    return b

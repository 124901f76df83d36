"""Certified roots, Mahler measure two ways, cyclotomic and reciprocity tests.

Root disks come from simultaneous (Aberth) iteration in multiprecision,
certified a posteriori with Weierstrass corrections: if the disks
D(z_i, d |W_i|) are pairwise disjoint, each holds exactly one root.
Every call builds its own mpmath context so concurrent use shares no
mutable precision state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from mpmath.ctx_mp import MPContext

from . import kernels
from .errors import DomainError, ResourceError
from .numtheory import totient
from .polycore import IntPoly, as_poly, cyclotomic, squarefree_decomposition

MAX_BITS = 4096


def _context(prec):
    ctx = MPContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True)
class Root:
    re: object
    im: object
    radius: object
    multiplicity: int = 1
    cluster: bool = False

    @property
    def value(self):
        return self.re + 1j * self.im if self.im else self.re

    @property
    def modulus(self):
        return abs(self.value)

    @property
    def is_real(self) -> bool:
        return self.im == 0


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicity, ordered by descending modulus then by
    ascending principal argument in (-pi, pi]."""

    poly: IntPoly
    roots: tuple
    precision_bits: int

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    @property
    def values(self) -> list:
        return [r.value for r in self.roots]

    @property
    def moduli(self) -> list:
        return [r.modulus for r in self.roots]

    @property
    def max_radius(self):
        return max((r.radius for r in self.roots), default=0)


@dataclass(frozen=True)
class MeasureResult:
    value: object
    error: object
    method: str

    @property
    def lower(self):
        return self.value - self.error

    @property
    def upper(self):
        return self.value + self.error

    def log(self):
        """Enclosure (value, error) of the logarithmic measure."""
        lo, hi = self.lower, self.upper
        ctx = getattr(self.value, "context", None)
        if ctx is None:
            llo = math.log(lo) if lo > 0 else float("-inf")
            return (math.log(hi) + llo) / 2, (math.log(hi) - llo) / 2
        # log is monotone; a few ulps keep the rounded endpoints outside
        llo = ctx.log(lo) if lo > 0 else ctx.ninf
        lhi = ctx.log(hi)
        mid = (lhi + llo) / 2
        slack = ctx.mpf(2) ** (4 - ctx.prec) * (1 + abs(lhi))
        return mid, (lhi - llo) / 2 + slack

    def overlaps(self, other: "MeasureResult") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __float__(self):
        return float(self.value)


# root isolation

def _seeds(coeffs, ctx):
    d = len(coeffs) - 1
    try:
        fl = [float(a) for a in coeffs]
        ok = all(math.isfinite(x) for x in fl)
    except OverflowError:
        ok = False
    if ok:
        z, converged = kernels.aberth(fl)
        if converged and all(math.isfinite(w.real) and math.isfinite(w.imag) for w in z):
            return [ctx.mpc(w) for w in z]
    # perturbed circle through the geometric mean of the root moduli
    r = ctx.root(ctx.mpf(abs(coeffs[0]) or 1) / abs(coeffs[-1]), d)
    return [r * ctx.expjpi(ctx.mpf(2 * k) / d + ctx.mpf("0.13")) for k in range(d)]


def _to_fraction(x) -> Fraction:
    man, exp = x.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def _horner(a, z):
    p = a[-1]
    for c in reversed(a[:-1]):
        p = p * z + c
    return p


def _aberth_mp(ctx, a, da, z, tol, maxiter):
    d = len(a) - 1
    for _ in range(maxiter):
        biggest = 0
        for i in range(d):
            zi = z[i]
            p = _horner(a, zi)
            if p == 0:
                continue
            q = _horner(da, zi)
            if q == 0:
                q = ctx.mpf(2) ** (-ctx.prec)
            ratio = p / q
            s = 0
            for j in range(d):
                if j != i:
                    diff = zi - z[j]
                    if diff == 0:
                        diff = ctx.mpf(2) ** (-ctx.prec)
                    s += 1 / diff
            den = 1 - ratio * s
            step = ratio / den if den != 0 else ratio
            z[i] = zi - step
            rel = abs(step) / max(1, abs(z[i]))
            if rel > biggest:
                biggest = rel
        if biggest < tol:
            return True
    return False


def _companion_roots(ctx, coeffs):
    d = len(coeffs) - 1
    m = ctx.matrix(d, d)
    lc = ctx.mpf(coeffs[-1])
    for i in range(1, d):
        m[i, i - 1] = 1
    for i in range(d):
        m[i, d - 1] = -ctx.mpf(coeffs[i]) / lc
    ev = ctx.eig(m, left=False, right=False)
    return [ctx.mpc(e) for e in ev]


def _certify(ctx, f, a, z):
    """Certified radii for approximations ``z`` of the roots of squarefree f,
    or None when the disks are not pairwise disjoint."""
    d = len(a) - 1
    u = ctx.mpf(2) ** (1 - ctx.prec)
    absa = [abs(c) for c in a]
    da = [k * a[k] for k in range(1, d + 1)]
    radii = []
    for i in range(d):
        zi = z[i]
        az = abs(zi)
        fz = _horner(a, zi)
        bound = _horner(absa, az) * (2 * d + 4) * u
        prod = a[-1]
        for j in range(d):
            if j != i:
                prod *= zi - z[j]
        aprod = abs(prod)
        if aprod == 0:
            return None
        rw = d * (abs(fz) + bound) / aprod * (1 + (4 * d + 8) * u)
        dfz = abs(_horner(da, zi))
        dbound = _horner([abs(c) for c in da], az) * (2 * d + 4) * u
        if dfz > dbound:
            rn = d * (abs(fz) + bound) / (dfz - dbound) * (1 + 8 * u)
            rw = max(rw, rn)
        radii.append(rw + 4 * u * az)
    for i in range(d):
        for j in range(i + 1, d):
            if abs(z[i] - z[j]) * (1 - 4 * u) <= radii[i] + radii[j]:
                return None
    return radii


def _snap_real(z, radii):
    """Replace centers by real numbers when the disk provably holds a real
    root (disk meets the axis and its mirror image meets no other disk)."""
    out = list(z)
    for i, zi in enumerate(z):
        if abs(zi.imag) <= radii[i]:
            mirror = zi.conjugate()
            if all(abs(mirror - z[j]) > radii[i] + radii[j] for j in range(len(z)) if j != i):
                out[i] = zi.real
    return out


def _isolate(f: IntPoly, target, ctx):
    coeffs = list(f.coeffs)
    d = len(coeffs) - 1
    maxbits = max(abs(c).bit_length() for c in coeffs)
    prec = max(64, maxbits + 32, int(-math.log2(target)) + 40 if target > 0 else 64)
    if prec > MAX_BITS:
        raise ResourceError(f"root isolation would need more than {MAX_BITS} bits")
    if d == 1:
        exact = Fraction(-coeffs[0], coeffs[1])
        while True:
            ctx.prec = prec
            c = ctx.mpf(exact.numerator) / exact.denominator
            r = ctx.mpf(0) if _to_fraction(c) == exact else abs(c) * ctx.mpf(2) ** (2 - prec)
            if r <= target or prec >= MAX_BITS:
                return [c], [r], prec
            prec *= 2
    ctx.prec = prec
    z = _seeds(coeffs, ctx)
    fallback_used = False
    while True:
        ctx.prec = prec
        a = [ctx.mpf(c) for c in coeffs]
        da = [k * a[k] for k in range(1, d + 1)]
        z = [ctx.mpc(w) for w in z]
        converged = _aberth_mp(ctx, a, da, z, ctx.mpf(2) ** (16 - prec), 60 + 4 * d)
        if not converged and not fallback_used:
            fallback_used = True
            z = _companion_roots(ctx, coeffs)
            converged = _aberth_mp(ctx, a, da, z, ctx.mpf(2) ** (16 - prec), 60 + 4 * d)
        if converged:
            radii = _certify(ctx, f, a, z)
            if radii is not None and max(radii) <= target:
                z = _snap_real(z, radii)
                return z, radii, prec
        prec *= 2
        if prec > MAX_BITS:
            raise ResourceError(f"root certification did not succeed within {MAX_BITS} bits")


def _order(entries, ctx):
    """Descending modulus; moduli equal within radii -> ascending argument."""
    keyed = sorted(entries, key=lambda e: -abs(e[0]))
    groups, cur = [], []
    for e in keyed:
        if cur:
            prev = cur[-1]
            if abs(prev[0]) - prev[1] <= abs(e[0]) + e[1]:
                cur.append(e)
                continue
            groups.append(cur)
        cur = [e]
    if cur:
        groups.append(cur)
    out = []
    for g in groups:
        out.extend(sorted(g, key=lambda e: (ctx.arg(e[0]) if e[0] != 0 else 0, e[2])))
    return out


def find_roots(p, target_precision=1e-12) -> RootSet:
    """All roots of ``p`` with certified disks of radius <= target_precision.

    Repeated roots (from the squarefree decomposition) are returned once per
    multiplicity and flagged ``cluster``.
    """
    p = as_poly(p)
    if p.is_zero:
        raise DomainError("find_roots of the zero polynomial")
    if p.degree < 1:
        raise DomainError("find_roots needs degree >= 1")
    target = float(target_precision)
    if not target > 0:
        raise DomainError("target precision must be positive")
    ctx = _context(64)
    entries = []
    zeros = next(k for k, c in enumerate(p.coeffs) if c)
    for _ in range(zeros):
        entries.append((ctx.mpf(0), ctx.mpf(0), 0, zeros))
    rest = IntPoly(p.coeffs[zeros:])
    top = 64
    serial = 1
    if rest.degree >= 1:
        for f, mult in squarefree_decomposition(rest):
            z, radii, prec = _isolate(f, target, ctx)
            top = max(top, prec)
            for zi, ri in zip(z, radii):
                for _ in range(mult):
                    entries.append((zi, ri, serial, mult))
                serial += 1
    ctx.prec = top
    roots = []
    for zi, ri, _, mult in _order(entries, ctx):
        if isinstance(zi, type(ctx.mpc(0))):
            re, im = zi.real, zi.imag
        else:
            re, im = ctx.mpf(zi), ctx.mpf(0)
        roots.append(Root(re, im, ctx.mpf(ri), mult, mult > 1))
    return RootSet(p, tuple(roots), top)


# Mahler measure

def _enclosure(ctx, lo, hi, method):
    """Midpoint and radius whose interval still covers [lo, hi] after rounding."""
    mid = (hi + lo) / 2
    err = max(hi - mid, mid - lo) + abs(mid) * ctx.mpf(2) ** (2 - ctx.prec)
    return MeasureResult(mid, err, method)


def _measure_from_roots(rs: RootSet, lead, target=None):
    prec = rs.precision_bits
    if target:
        prec = max(prec, int(-math.log2(target)) + 32)
    ctx = _context(prec)
    u = ctx.mpf(2) ** (1 - ctx.prec)
    lo = hi = ctx.mpf(abs(lead))
    for r in rs.roots:
        m = abs(ctx.mpc(r.re, r.im))
        lo *= max(1, m - r.radius)
        hi *= max(1, m + r.radius)
    n = len(rs.roots) + 2
    lo *= 1 - 2 * n * u
    hi *= 1 + 2 * n * u
    lo = max(lo, ctx.mpf(abs(lead)))
    return ctx, lo, hi


def mahler_measure(p, target_precision=1e-12) -> MeasureResult:
    """Certified enclosure of M(P) = |a_d| prod max(1, |alpha_j|)."""
    p = as_poly(p)
    if p.is_zero:
        raise DomainError("Mahler measure of the zero polynomial")
    target = float(target_precision)
    if p.degree == 0:
        ctx = _context(64)
        return MeasureResult(ctx.mpf(abs(p.lc)), ctx.mpf(0), "roots")
    rt = target
    for _ in range(12):
        rs = find_roots(p, rt)
        ctx, lo, hi = _measure_from_roots(rs, p.lc, target)
        res = _enclosure(ctx, lo, hi, "roots")
        if res.error <= target:
            return res
        rt = min(rt, target / (4 * p.degree * float(hi))) / 4
    raise ResourceError("could not reach the requested measure precision")


def _log2_int(n: int) -> float:
    b = n.bit_length()
    if b < 1000:
        return math.log2(n)
    return (b - 60) + math.log2(n >> (b - 60))


def _pellet_holds(q_abs, j, x: Fraction) -> bool:
    """|q_j| x^j > sum_{i != j} |q_i| x^i, decided exactly."""
    num, den = x.numerator, x.denominator
    d = len(q_abs) - 1
    # multiply through by den^d
    lhs = q_abs[j] * num**j * den ** (d - j)
    rhs = 0
    for i, c in enumerate(q_abs):
        if i != j and c:
            rhs += c * num**i * den ** (d - i)
    return lhs > rhs


def _dyadic(t: float) -> Fraction:
    a = math.floor(t)
    frac = Fraction(2.0 ** (t - a))
    return frac * (Fraction(2) ** a)


def _log_margin(h, j, t):
    """log2(|q_j| x^j) - log2(sum_{i != j} |q_i| x^i) at x = 2^t, in floats."""
    terms = [hi + i * t for i, hi in enumerate(h) if hi is not None and i != j]
    if not terms:
        return math.inf
    top = max(terms)
    rest = top + math.log2(sum(2.0 ** (x - top) for x in terms))
    return h[j] + j * t - rest


def _pellet_radius(q_abs, h, j, inside, outside):
    """Exactly verified dyadic radius near the boundary of the Pellet
    interval, on the ``inside`` side of a float bisection."""
    a, b = outside, inside
    for _ in range(60):
        mid = (a + b) / 2
        if _log_margin(h, j, mid) > 0:
            b = mid
        else:
            a = mid
    step = max(abs(inside - b), 1e-9) / 1024
    t = b
    for _ in range(12):
        x = _dyadic(t)
        if _pellet_holds(q_abs, j, x):
            return x
        t += step if inside > b else -step
        step *= 4
        if (inside - t) * (inside - b) < 0:
            t = inside
    x = _dyadic(inside)
    return x if _pellet_holds(q_abs, j, x) else None


def _pellet_bounds(q_abs):
    """(lower, upper) bounds of M(Q) as Fractions from Pellet splittings;
    either may be None."""
    d = len(q_abs) - 1
    best_lo, best_hi = None, None
    # all roots inside the unit disk or all outside decide M exactly
    if _pellet_holds(q_abs, d, Fraction(1)):
        return Fraction(q_abs[d]), Fraction(q_abs[d])
    if q_abs[0] and _pellet_holds(q_abs, 0, Fraction(1)):
        return Fraction(q_abs[0]), Fraction(q_abs[0])
    h = [(_log2_int(c) if c else None) for c in q_abs]
    pts = [(i, h[i]) for i in range(d + 1) if h[i] is not None]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) <= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    for idx in range(1, len(hull) - 1):
        j = hull[idx][0]
        sl = (hull[idx][1] - hull[idx - 1][1]) / (j - hull[idx - 1][0])
        sr = (hull[idx + 1][1] - hull[idx][1]) / (hull[idx + 1][0] - j)
        t_lo, t_hi = -sl, -sr
        if t_hi <= 0:
            continue
        grid = [t_lo + (t_hi - t_lo) * s / 64 for s in range(1, 64)]
        inside = [t for t in grid if _log_margin(h, j, t) > 0]
        if not inside:
            continue
        r = _pellet_radius(q_abs, h, j, inside[0], t_lo)
        big = _pellet_radius(q_abs, h, j, inside[-1], t_hi)
        if r is None or big is None:
            continue
        if big < 1:
            if _pellet_holds(q_abs, j, Fraction(1)):
                big = Fraction(1)
            else:
                continue
        ratio = r / big
        eta = sum(comb(j, t) * comb(d - j, t) * ratio**t for t in range(1, min(j, d - j) + 1))
        lo = Fraction(q_abs[j]) / (1 + eta)
        if best_lo is None or lo > best_lo:
            best_lo = lo
        if eta < 1:
            hi = Fraction(q_abs[j]) / (1 - eta) * max(Fraction(1), r) ** j
            if best_hi is None or hi < best_hi:
                best_hi = hi
    return best_lo, best_hi


def _root_bounds(ctx, lo: Fraction, hi: Fraction, k: int):
    scale = 2**k
    u = ctx.mpf(2) ** (8 - ctx.prec)
    llo = (ctx.log(lo.numerator) - ctx.log(lo.denominator)) / scale
    lhi = (ctx.log(hi.numerator) - ctx.log(hi.denominator)) / scale
    return ctx.exp(llo) * (1 - u), ctx.exp(lhi) * (1 + u)


def graeffe_measure(p, iterations: int, bit_budget: int = 1 << 24) -> MeasureResult:
    """Enclosure of M(P) from k exact root-squaring steps.

    Bounds on M(Q_k) come from Pellet/Rouche splittings (checked exactly at
    dyadic radii), Landau's inequality M <= ||Q||_2 and |q_j| <= C(d,j) M.
    """
    from .polycore import graeffe_step

    p = as_poly(p)
    if not p.is_monic:
        raise DomainError("graeffe_measure requires a monic polynomial")
    if iterations < 0:
        raise DomainError("iterations must be >= 0")
    q = p
    for _ in range(iterations):
        q = graeffe_step(q)
        if max(abs(c).bit_length() for c in q.coeffs) > bit_budget:
            raise ResourceError(
                f"Graeffe coefficients exceeded the {bit_budget}-bit budget after "
                f"{_ + 1} iterations")
    return _graeffe_enclosure(q, iterations)


def _graeffe_enclosure(q: IntPoly, k: int) -> MeasureResult:
    d = q.degree
    q_abs = [abs(c) for c in q.coeffs]
    lo = Fraction(max(max(q_abs[0], q_abs[d]), 1))
    for j in range(d + 1):
        lo = max(lo, Fraction(q_abs[j], comb(d, j)))
    s2 = sum(c * c for c in q_abs)
    r = isqrt(s2)
    hi = Fraction(r if r * r == s2 else r + 1)
    plo, phi = _pellet_bounds(q_abs) if d >= 1 else (None, None)
    if plo is not None:
        lo = max(lo, plo)
    if phi is not None:
        hi = min(hi, phi)
    bits = max(c.bit_length() for c in q_abs)
    ctx = _context(max(128, min(bits + 64, 8192)))
    mlo, mhi = _root_bounds(ctx, lo, hi, k)
    mlo = max(mlo, ctx.mpf(1))
    return _enclosure(ctx, mlo, mhi, "graeffe")


def graeffe_measure_to(p, tolerance, max_iterations: int = 40, bit_budget: int = 1 << 24):
    """Iterate root squaring until the enclosure half-width is <= tolerance.

    Returns (MeasureResult, iterations used).
    """
    from .polycore import graeffe_step

    p = as_poly(p)
    if not p.is_monic:
        raise DomainError("graeffe_measure requires a monic polynomial")
    q, k = p, 0
    while True:
        res = _graeffe_enclosure(q, k)
        if res.error <= tolerance:
            return res, k
        if k >= max_iterations:
            raise ResourceError(f"Graeffe enclosure still {float(res.error):.3g} wide after {k} steps")
        q = graeffe_step(q)
        k += 1
        if max(abs(c).bit_length() for c in q.coeffs) > bit_budget:
            raise ResourceError(f"Graeffe coefficients exceeded the {bit_budget}-bit budget")


# Kronecker, reciprocity, reference bounds

@dataclass(frozen=True)
class CyclotomicWitness:
    is_cyclotomic: bool
    x_power: int
    indices: tuple
    remainder: IntPoly

    def __bool__(self):
        return self.is_cyclotomic


def is_cyclotomic_product(p) -> CyclotomicWitness:
    """Exact Kronecker test: P = x^a prod Phi_{n_i}?"""
    p = as_poly(p)
    if not p.is_monic:
        raise DomainError("is_cyclotomic_product requires a monic polynomial")
    a = next(k for k, c in enumerate(p.coeffs) if c)
    q = IntPoly(p.coeffs[a:])
    found = []
    if q.degree > 0 and abs(q.coeffs[0]) == 1:
        n = 1
        cap = 2 * q.degree**2
        while q.degree > 0 and n <= cap:
            if totient(n) <= q.degree:
                phi = cyclotomic(n)
                while q.degree >= phi.degree:
                    quo, rem = q.divmod_monic(phi)
                    if not rem.is_zero:
                        break
                    q = quo
                    found.append(n)
            n += 1
    return CyclotomicWitness(q == IntPoly([1]), a, tuple(found), q)


def is_reciprocal(p) -> bool:
    """a_j = a_{d-j} for all j."""
    c = as_poly(p).coeffs
    return bool(c) and c == c[::-1]


def is_antireciprocal(p) -> bool:
    c = as_poly(p).coeffs
    return bool(c) and c == tuple(-x for x in c[::-1])


def dobrowolski_bound(d: int, c0: float) -> float:
    """c0 (log log d / log d)^3."""
    if d < 3:
        raise DomainError("dobrowolski_bound needs d >= 3")
    ll = math.log(math.log(d))
    return c0 * (ll / math.log(d)) ** 3


def hadamard_disc_bound(p, n: int, precision=1e-15):
    """d^d M(P)^{2nd}, using the upper end of the certified measure."""
    p = as_poly(p)
    if not p.is_monic:
        raise DomainError("hadamard_disc_bound requires a monic polynomial")
    if n < 1:
        raise DomainError("n must be positive")
    from .polycore import is_squarefree

    if not is_squarefree(p):
        raise DomainError("hadamard_disc_bound requires a squarefree polynomial")
    d = p.degree
    m = mahler_measure(p, precision)
    ctx = _context(max(64, int(2 * n * d * math.log2(float(m.upper)) + 64)))
    return ctx.mpf(d) ** d * ctx.mpf(m.upper) ** (2 * n * d)

"""Enumeration of bounded families of monic integer polynomials and the
small-measure scan.

Enumeration order is fixed: by degree, then lexicographic on the
coefficient vector (a_0, ..., a_{d-1}) with each entry running from -H to H.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import DomainError, ResourceError
from .kernels import batch_measure
from .polycore import IntPoly
from .roots import MeasureResult, is_antireciprocal, is_cyclotomic_product, is_reciprocal, mahler_measure

SMYTH_CONSTANT = 1.3247179572447460  # real root of x^3 - x - 1
DEFAULT_BUDGET = 2_000_000


def monic_polys(max_degree: int, max_height: int, min_degree: int = 1, constant_nonzero: bool = False):
    """Every monic P with min_degree <= deg P <= max_degree and all lower
    coefficients in [-H, H]."""
    rng = range(-max_height, max_height + 1)
    for d in range(min_degree, max_degree + 1):
        for low in itertools.product(rng, repeat=d):
            if constant_nonzero and low[0] == 0:
                continue
            yield IntPoly(low + (1,))


def reciprocal_polys(max_degree: int, max_height: int, min_degree: int = 1):
    """Monic P with x^d P(1/x) = +-P, i.e. palindromic or antipalindromic."""
    rng = range(-max_height, max_height + 1)
    for d in range(min_degree, max_degree + 1):
        for sign in (1, -1):
            # free indices: 1 .. ceil(d/2)-1 (mirrored), plus the middle one
            # for palindromic even degree (antipalindromic forces it to 0)
            pairs = list(range(1, (d + 1) // 2))
            free = pairs + ([d // 2] if d % 2 == 0 and sign == 1 else [])
            for vals in itertools.product(rng, repeat=len(free)):
                c = [0] * (d + 1)
                c[d], c[0] = 1, sign
                for i, v in zip(free, vals):
                    c[i] = v
                    c[d - i] = sign * v
                yield IntPoly(c)


def gauss_corpus():
    """Monic, degree 1..5, height <= 3."""
    return list(monic_polys(5, 3))


def desk_corpus():
    """Monic, degree 2..4, height <= 2."""
    return list(monic_polys(4, 2, min_degree=2))


def is_self_reciprocal(p) -> bool:
    return is_reciprocal(p) or is_antireciprocal(p)


@dataclass(frozen=True)
class ScanRecord:
    polynomial: str
    measure: MeasureResult
    reciprocal: bool
    cyclotomic: bool = False

    def to_json(self, digits: int = 20) -> dict:
        from mpmath import mp, nstr

        with mp.workprec(128):
            return {"polynomial": self.polynomial,
                    "measure": nstr(mp.mpf(self.measure.value), digits, strip_zeros=False),
                    "error": nstr(mp.mpf(self.measure.error), 3),
                    "reciprocal": self.reciprocal, "cyclotomic": self.cyclotomic}


def _count(max_degree, max_height, reciprocal_only):
    w = 2 * max_height + 1
    if reciprocal_only:
        return sum(w ** ((d + 1) // 2 - 1) * (w if d % 2 == 0 else 1) + w ** ((d + 1) // 2 - 1)
                   for d in range(1, max_degree + 1))
    return sum(w**d for d in range(1, max_degree + 1))


def _candidates(max_degree, max_height, threshold, reciprocal_only):
    src = (reciprocal_polys(max_degree, max_height) if reciprocal_only
           else monic_polys(max_degree, max_height, constant_nonzero=True))
    for p in src:
        a0 = abs(p.coeffs[0])
        # M(P) >= |a_0|, and a_0 = 0 repeats a lower-degree polynomial
        if a0 == 0 or a0 >= threshold:
            continue
        yield p


def scan(max_degree: int, max_height: int, threshold: float, reciprocal_only: bool = False,
         threads: int = 1, budget: int = DEFAULT_BUDGET, chunk: int = 2048) -> list:
    """Noncyclotomic monic P in the family with M(P) < threshold, sorted by
    measure then by coefficient string."""
    if max_degree < 1 or max_height < 0:
        raise DomainError("degree must be >= 1 and height >= 0")
    if _count(max_degree, max_height, reciprocal_only) > budget:
        raise ResourceError(f"scan space exceeds the budget of {budget} polynomials")
    if threshold <= 1.0:
        return []
    cands = list(dict.fromkeys(_candidates(max_degree, max_height, threshold, reciprocal_only)))
    blocks = [cands[i:i + chunk] for i in range(0, len(cands), chunk)]

    def screen(block):
        # double-precision screen; the margin covers clustered roots, and
        # the certified measure below makes the final decision
        vals = batch_measure([p.coeffs for p in block])
        return [p for p, v in zip(block, vals) if not v == v or v < threshold * (1 + 1e-3)]

    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            screened = list(ex.map(screen, blocks))
    else:
        screened = [screen(b) for b in blocks]
    out = []
    for block in screened:
        for p in block:
            if is_cyclotomic_product(p):
                continue
            m = mahler_measure(p, 1e-20)
            if m.value < threshold:
                out.append(ScanRecord(p.to_string(), m, is_self_reciprocal(p)))
    out.sort(key=lambda r: (r.measure.value, r.polynomial))
    return out


def smyth_violations(records, bound=None) -> list:
    """Noncyclotomic records with certified measure strictly below ``bound``
    that are not (anti)reciprocal.  Smyth's theorem says this list is empty.

    The default bound is the lower end of a certified enclosure of the real
    root of x^3 - x - 1; a float would sit above it and wrongly catch the
    polynomials whose measure equals that root.
    """
    if bound is None:
        bound = mahler_measure(IntPoly([-1, -1, 0, 1]), 1e-40).lower
    return [r for r in records if not r.cyclotomic and r.measure.upper < bound and not r.reciprocal]

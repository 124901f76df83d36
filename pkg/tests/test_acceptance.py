"""Acceptance criteria 1-12.

Each test prints one line, "criterion N: PASS|FAIL  <summary>", whatever
the outcome.  Criterion 10 is marked xfail(strict): one of its finite-N
ratio bands does not hold for every quadratic (see the README).
"""
import random
import time
from fractions import Fraction

import pytest
import sympy

from lehmerseq.corpus import desk_corpus, gauss_corpus, scan, smyth_violations
from lehmerseq.errors import ResourceError
from lehmerseq.estimates import (confluent_vandermonde, confluent_vandermonde_symbolic,
                                 limsup_delta_estimate, sandwich_check)
from lehmerseq.genfun import (g_quadratic, gauss_property_witness, minton_decompose,
                              product_identity_check, rational_fn_of_delta)
from lehmerseq.numtheory import factorize
from lehmerseq.polycore import IntPoly, discriminant, is_squarefree, power_map, resultant
from lehmerseq.roots import graeffe_measure_to, is_cyclotomic_product, mahler_measure
from lehmerseq.sequences import (a0_power_divisibility, characteristic_primes, delta_seq,
                                 essential_factors, gauss_suite, order_in_quotient,
                                 predicted_disc_divisibility, small_delta, u_divisibility_check,
                                 u_of_n, u_partition_factors, u_upper_bound_check)

GOLDEN_SQ = IntPoly([1, -3, 1])
SMYTH = IntPoly([-1, -1, 0, 1])
QUARTIC = IntPoly([1, 1, -1, 1, 1])
LEHMER = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


@pytest.fixture
def report(capsys):
    """report(k, ok, summary): print the criterion line, then assert ok."""
    def emit(k, ok, summary=""):
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}  {summary}")
        assert ok, summary
    return emit


def test_criterion_01_exact_values(report):
    t = time.perf_counter()
    checks = {
        "Delta(P_3), x^2-3x+1": delta_seq(GOLDEN_SQ, 3).values[3] == 2**6 * 5,
        "Delta(P_7), x^3-x-1": delta_seq(SMYTH, 7).values[7] == -(2**6) * 23,
        "Delta(P), quartic": discriminant(QUARTIC) == -3 * 13**2,
        "Delta(P_5), quartic": delta_seq(QUARTIC, 5).values[5] == -(2**16) * 3 * 13**2,
        "U(7), x^2-3x+1": u_of_n(GOLDEN_SQ, 7) == 2**6 * 3**2 * 5**2 * 7**2,
    }
    dt = time.perf_counter() - t
    bad = [k for k, v in checks.items() if not v]
    report(1, not bad and dt < 1, f"{len(checks) - len(bad)}/{len(checks)} exact values, {dt:.2f} s {bad}")


def test_criterion_02_mahler_measures(report):
    t = time.perf_counter()
    lines, ok = [], True
    for name, p, ref in (("Lehmer", LEHMER, 1.17628), ("x^3-x-1", SMYTH, 1.32471)):
        m = mahler_measure(p, 1e-15)
        g, k = graeffe_measure_to(p, 1e-5)
        good = abs(float(m.value) - ref) <= 1e-5 and m.overlaps(g)
        ok &= good
        lines.append(f"{name} M={float(m.value):.8f} graeffe k={k} overlap={m.overlaps(g)}")
    dt = time.perf_counter() - t
    report(2, ok and dt < 1, f"{'; '.join(lines)}; {dt:.2f} s")


def test_criterion_03_congruence_suites(report):
    t = time.perf_counter()
    qs = [IntPoly([-1, 1]), IntPoly([-2, 1]), IntPoly([-1, -1, 1])]
    corpus = gauss_corpus()
    failures = []
    for p in corpus:
        for rep in gauss_suite(p, qs, 24):
            if not rep.passed:
                failures.append((p.to_string(), rep.family, rep.failures()[:3]))
    dt = time.perf_counter() - t
    report(3, not failures and dt < 120,
           f"{len(corpus)} polynomials x 5 families, n <= 24, {len(failures)} failures, {dt:.1f} s "
           f"{failures[:3]}")


def _irreducible_noncyclotomic(p):
    x = sympy.Symbol("x")
    _, facs = sympy.factor_list(sympy.Poly(list(reversed(p.coeffs)), x))
    return len(facs) == 1 and facs[0][1] == 1 and not is_cyclotomic_product(p)


def test_criterion_04_divisibility(report):
    t = time.perf_counter()
    primes = [2, 3, 5, 7, 11, 13]
    dob_fail, zero_polys = [], set()
    for p in gauss_corpus():
        for q in primes:
            r = resultant(power_map(p, q), p)
            if r % q**p.degree:
                dob_fail.append((p.to_string(), q))
            if r == 0:
                zero_polys.add(p)
    # a vanishing Res(P_p, P) must come from a reducible or cyclotomic P
    zero_bad = [p.to_string() for p in zero_polys if _irreducible_noncyclotomic(p)]

    feasible = u_fail = bound_fail = 0
    a0_members, a0_fail = set(), 0
    for p in desk_corpus():
        for n in range(2, 13):
            try:
                u = u_of_n(p, n)
            except ResourceError:
                continue
            feasible += 1
            main, extra = u_divisibility_check(p, n, u=u)
            u_fail += not (main.passed and all(v.passed for v in extra))
            bound_fail += u_upper_bound_check(p, n, u=u).passed is not True
            if abs(p.coeffs[0]) >= 2:
                a0_members.add(p)
                a0_fail += not a0_power_divisibility(p, n, u=u).passed
    dt = time.perf_counter() - t
    ok = not dob_fail and not zero_bad and not u_fail and not bound_fail and not a0_fail \
        and len(a0_members) >= 20 and dt < 300
    report(4, ok, f"p^d | Res(P_p,P): {len(dob_fail)} failures, {len(zero_polys)} polys with a zero "
                  f"(all reducible or cyclotomic: {not zero_bad}); U(n) on {feasible} feasible pairs: "
                  f"{u_fail} divisibility / {bound_fail} bound failures; a0-power on "
                  f"{len(a0_members)} members: {a0_fail} failures; {dt:.1f} s")


def test_criterion_05_structure(report):
    N = 24
    corpus = desk_corpus()
    fails = []
    n0s = {}
    psi_checked = 0
    for p in corpus:
        seq = delta_seq(p, N)
        rep = small_delta(p, N, seq)
        if not all(rep.divisibility):
            fails.append((p.to_string(), "n | delta_n"))
        if rep.sign_verdict == "fail":
            fails.append((p.to_string(), "sign constancy"))
        if not rep.abs_sum_identity:
            fails.append((p.to_string(), "|Delta| = sum |delta|"))
        n0s[p.to_string()] = rep.n0
        if is_squarefree(p) and p.coeffs[0] != 0:
            ef = essential_factors(p, N, seq)  # raises if the product identity fails
            psi_checked += 1
            if not ef.all_squares or not ef.psi1_is_disc:
                fails.append((p.to_string(), "Psi_m square"))
    worst = max(n0s.values())
    report(5, not fails and worst < N,
           f"{len(corpus)} polynomials, n <= {N}; Psi checked on {psi_checked}; "
           f"12 | delta_n for n > n0 with max n0 = {worst}; {len(fails)} failures {fails[:3]}")


def test_criterion_06_characteristic_primes(report):
    found = []
    for p, n, prime, k in ((QUARTIC, 5, 2, 16), (SMYTH, 7, 2, 6)):
        cps, _ = characteristic_primes(p, n)
        hit = [c for c in cps if c.p == prime]
        ok = len(hit) == 1 and hit[0].k == k and hit[0].residue_ok and pow(prime, k, n) == 1
        found.append((n, [(c.p, c.k) for c in cps], ok))
    report(6, all(f[2] for f in found), f"{found}")


def test_criterion_07_order_predictions(report):
    got = []
    for p, M, e in ((GOLDEN_SQ, 3, 2), (SMYTH, 7, 6), (QUARTIC, 5, 12)):
        _, order = order_in_quotient(p, 2)
        v = predicted_disc_divisibility(p, 2)
        got.append((order, v.passed, v.detail["exponent"], order == M and v.passed and v.detail["exponent"] == e))
    report(7, all(g[3] for g in got), f"orders {[g[0] for g in got]}, predictions {[g[1] for g in got]}")


def test_criterion_08_generating_functions(report):
    g = rational_fn_of_delta(GOLDEN_SQ)
    den_ok = g.fn.den == IntPoly([1, -7, 1]) * IntPoly([1, -1])
    dec = minton_decompose(g.fn)
    terms = sorted((u.coeffs, c) for u, c in dec.terms)
    terms_ok = terms == sorted([((1, -7, 1), -1), ((1, -1), 2)])
    prod_ok = product_identity_check(GOLDEN_SQ, 16, dec)
    witness = gauss_property_witness(g_quadratic(GOLDEN_SQ).series(40)[1:])
    report(8, den_ok and terms_ok and prod_ok and witness is not None,
           f"den {g.fn.den.to_string()}, terms {terms}, product identity to 16: {prod_ok}, "
           f"g_P witness n = {witness}")


def test_criterion_09_partitions(report):
    lines, ok = [], True
    for p, n, count in ((GOLDEN_SQ, 2, 2), (GOLDEN_SQ, 3, 2), (GOLDEN_SQ, 5, 2), (GOLDEN_SQ, 6, None),
                        (SMYTH, 5, 2), (QUARTIC, 6, 15)):
        out, u = u_partition_factors(p, n)
        prod = 1
        for _, v in out:
            prod *= v
        good = prod == u and (count is None or len(out) == count)
        ok &= good
        lines.append(f"d={p.degree} n={n}: {len(out)} factors, product == U: {prod == u}")
    report(9, ok, "; ".join(lines))


@pytest.mark.xfail(strict=True, raises=AssertionError, reason="E_40/T leaves [0.8, 1.0] for quadratics whose small n "
                                       "carry the 2^(d(d-1)) slack, e.g. x^2 - x - 1")
def test_criterion_10_limsup_substitutes(report):
    corpus = [p for p in desk_corpus() if is_squarefree(p)]
    bound_fail, exceed_fail, band = [], [], []
    for p in corpus:
        lim = limsup_delta_estimate(p, 24)
        if not lim.passed:
            bound_fail.append((p.to_string(), "product bound"))
        if is_cyclotomic_product(p):
            continue
        sw = sandwich_check(p, 24)
        if not sw.passed:
            bound_fail.append((p.to_string(), "Hadamard"))
        if not sw.exceeded:
            exceed_fail.append(p.to_string())
    for p in corpus:
        if p.degree == 2 and not is_cyclotomic_product(p):
            r = limsup_delta_estimate(p, 40).ratio
            if not 0.8 <= r <= 1.0:
                band.append((p.to_string(), round(r, 3)))
    ok = not bound_fail and not exceed_fail and not band
    summary = (f"per-n bounds: {len(bound_fail)} failures; exceedance by N=24: {len(exceed_fail)} misses; "
               f"E_40/T outside [0.8, 1.0] for {len(band)} quadratics {band[:4]}")
    report(10, ok, summary)


def test_criterion_11_scan(report):
    t = time.perf_counter()
    recs = scan(10, 1, 1.3, reciprocal_only=True)
    dt = time.perf_counter() - t
    best = recs[0] if recs else None
    lehmer_min = best is not None and abs(float(best.measure.value) - 1.17628081825991750) < 1e-12 \
        and LEHMER.to_string() in {r.polynomial for r in recs if r.measure.value == best.measure.value}
    full = scan(6, 2, 1.3247179572447460)
    viol = smyth_violations(recs) + smyth_violations(full)
    report(11, lehmer_min and not viol and dt < 600,
           f"{len(recs)} hits below 1.3, minimum {float(best.measure.value):.10f} "
           f"({best.polynomial}), {dt:.1f} s; Smyth violations {len(viol)} "
           f"(also checked degree <= 6, height 2: {len(full)} hits)")


def test_criterion_12_confluent_vandermonde(report):
    rng = random.Random(12)
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 12)
        pts, left = [], n
        used = set()
        while left:
            m = rng.randint(1, left)
            x = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            if x in used:
                continue
            used.add(x)
            pts.append((x, m))
            left -= m
        bad += not confluent_vandermonde(pts).equal
    sym = {(k, s): confluent_vandermonde_symbolic(k, s) for k in range(1, 4) for s in range(0, 3)}
    report(12, bad == 0 and all(sym.values()),
           f"200 random rational specs (n <= 12): {bad} mismatches; symbolic one point of "
           f"multiplicity k <= 3 plus s <= 2 simple points: {sum(sym.values())}/{len(sym)}")

"""Pure-Python double-precision kernels.

Same API as the compiled ``_ckernels`` module; used when the extension is
not built or when ``LEHMERSEQ_PURE_PYTHON`` is set.  Results only seed or
pre-filter exact/certified code paths, so floating error here never
reaches a reported value.
"""
import cmath
import math


def _start_points(c):
    d = len(c) - 1
    lead = abs(c[d])
    low = abs(c[0]) if c[0] != 0 else 1.0
    r = (low / lead) ** (1.0 / d) if lead else 1.0
    if not math.isfinite(r) or r == 0.0:
        r = 1.0
    return [r * cmath.exp(1j * (2 * math.pi * k / d + 0.4)) for k in range(d)]


def aberth(coeffs, maxiter=500, tol=1e-14):
    """Aberth-Ehrlich iteration on ascending real coefficients.

    Returns (roots, converged).
    """
    c = [float(a) for a in coeffs]
    while c and c[-1] == 0.0:
        c.pop()
    d = len(c) - 1
    if d < 1:
        return [], True
    z = _start_points(c)
    dc = [k * c[k] for k in range(1, d + 1)]
    converged = False
    for _ in range(maxiter):
        biggest = 0.0
        for i in range(d):
            zi = z[i]
            p = c[d]
            for k in range(d - 1, -1, -1):
                p = p * zi + c[k]
            q = dc[d - 1]
            for k in range(d - 2, -1, -1):
                q = q * zi + dc[k]
            if p == 0:
                continue
            if q == 0:
                q = 1e-300
            ratio = p / q
            s = 0j
            for j in range(d):
                if j != i:
                    diff = zi - z[j]
                    if diff == 0:
                        diff = 1e-300
                    s += 1.0 / diff
            den = 1.0 - ratio * s
            step = ratio / den if den != 0 else ratio
            z[i] = zi - step
            rel = abs(step) / max(1.0, abs(z[i]))
            if rel > biggest:
                biggest = rel
        if biggest < tol:
            converged = True
            break
        if not all(math.isfinite(w.real) and math.isfinite(w.imag) for w in z):
            return z, False
    return z, converged


def measure(coeffs):
    """Floating Mahler measure |a_d| prod max(1, |z|)."""
    roots, _ = aberth(coeffs)
    out = abs(float(coeffs[-1]))
    for r in roots:
        m = abs(r)
        if m > 1.0:
            out *= m
    return out


def batch_measure(polys):
    return [measure(c) for c in polys]

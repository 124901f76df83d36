# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-precision kernels (Aberth iteration, floating measure).

Mirrors ``_pykernels``.  ``batch_measure`` runs without the GIL so scan
worker threads overlap.
"""
cimport cython
from libc.math cimport cos, sin, sqrt, fabs, pow, isfinite
from libc.stdlib cimport malloc, free

cdef inline double cabs(double complex z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef int _aberth(double *c, int d, double complex *z, int maxiter, double tol) noexcept nogil:
    cdef int i, j, k, it
    cdef double complex zi, p, q, s, ratio, den, step, diff
    cdef double biggest, rel, lead, low, r, ang
    lead = fabs(c[d])
    low = fabs(c[0]) if c[0] != 0.0 else 1.0
    r = pow(low / lead, 1.0 / d)
    if not isfinite(r) or r == 0.0:
        r = 1.0
    for k in range(d):
        ang = 2.0 * 3.141592653589793 * k / d + 0.4
        z[k] = r * cos(ang) + 1j * (r * sin(ang))
    for it in range(maxiter):
        biggest = 0.0
        for i in range(d):
            zi = z[i]
            p = c[d]
            for k in range(d - 1, -1, -1):
                p = p * zi + c[k]
            q = d * c[d]
            for k in range(d - 1, 0, -1):
                q = q * zi + k * c[k]
            if p == 0:
                continue
            if q == 0:
                q = 1e-300
            ratio = p / q
            s = 0
            for j in range(d):
                if j != i:
                    diff = zi - z[j]
                    if diff == 0:
                        diff = 1e-300
                    s = s + 1.0 / diff
            den = 1.0 - ratio * s
            if den != 0:
                step = ratio / den
            else:
                step = ratio
            z[i] = zi - step
            rel = cabs(step)
            if cabs(z[i]) > 1.0:
                rel = rel / cabs(z[i])
            if rel > biggest:
                biggest = rel
        if biggest < tol:
            return 1
        for i in range(d):
            if not (isfinite(z[i].real) and isfinite(z[i].imag)):
                return 0
    return 0


cdef double _measure(double *c, int d, double complex *z) noexcept nogil:
    cdef int k
    cdef double out, m
    _aberth(c, d, z, 500, 1e-14)
    out = fabs(c[d])
    for k in range(d):
        m = cabs(z[k])
        if m > 1.0:
            out *= m
    return out


@cython.wraparound(True)
def _clean(coeffs):
    c = [float(a) for a in coeffs]
    while c and c[-1] == 0.0:
        c.pop()
    return c


def aberth(coeffs, int maxiter=500, double tol=1e-14):
    """Aberth-Ehrlich iteration on ascending real coefficients.

    Returns (roots, converged).
    """
    c = _clean(coeffs)
    cdef int d = len(c) - 1
    if d < 1:
        return [], True
    cdef double *cc = <double *> malloc((d + 1) * sizeof(double))
    cdef double complex *z = <double complex *> malloc(d * sizeof(double complex))
    cdef int k, ok
    try:
        for k in range(d + 1):
            cc[k] = c[k]
        with nogil:
            ok = _aberth(cc, d, z, maxiter, tol)
        return [complex(z[k]) for k in range(d)], bool(ok)
    finally:
        free(cc)
        free(z)


def measure(coeffs):
    """Floating Mahler measure |a_d| prod max(1, |z|)."""
    return batch_measure([coeffs])[0]


def batch_measure(polys):
    cdef int n = len(polys)
    cdef int i, k, d, width = 0
    rows = []
    for p in polys:
        c = _clean(p)
        rows.append(c)
        if len(c) > width:
            width = len(c)
    if n == 0:
        return []
    cdef double *cc = <double *> malloc(n * width * sizeof(double))
    cdef int *deg = <int *> malloc(n * sizeof(int))
    cdef double *out = <double *> malloc(n * sizeof(double))
    cdef double complex *z = <double complex *> malloc(width * sizeof(double complex))
    try:
        for i in range(n):
            deg[i] = len(rows[i]) - 1
            for k in range(deg[i] + 1):
                cc[i * width + k] = rows[i][k]
        with nogil:
            for i in range(n):
                d = deg[i]
                if d < 1:
                    out[i] = fabs(cc[i * width]) if d == 0 else 0.0
                else:
                    out[i] = _measure(&cc[i * width], d, z)
        return [out[i] for i in range(n)]
    finally:
        free(cc)
        free(deg)
        free(out)
        free(z)

"""Compiled vs pure-Python double-precision kernels.

    python3 benchmarks/bench_kernels.py [--degree 10] [--height 1] [--repeat 3]

Workload: the floating measure of every monic polynomial of the scan family
(all of them, not only reciprocal ones), then Aberth on a few larger degrees.
"""
import argparse
import time

from lehmerseq import _pykernels
from lehmerseq.corpus import monic_polys

try:
    from lehmerseq import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=8)
    ap.add_argument("--height", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    polys = [p.coeffs for p in monic_polys(args.degree, args.height, constant_nonzero=True)]
    big = [[1] + [(-1) ** k for k in range(1, d)] + [1] for d in (20, 40, 80)]
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; only the Python kernels are timed")

    print(f"batch_measure over {len(polys)} polynomials (degree <= {args.degree}, height {args.height})")
    results = {}
    for name, mod in backends:
        t, vals = best_of(lambda: mod.batch_measure(polys), args.repeat)
        results[name] = (t, vals)
        print(f"  {name:7s} {t:9.4f} s   {len(polys) / t:12.0f} poly/s")
    if len(results) == 2:
        (tp, vp), (tc, vc) = results["python"], results["cython"]
        diff = max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(vp, vc))
        print(f"  speedup {tp / tc:.1f}x, max relative difference {diff:.2e}")

    print("aberth on the alternating-sign polynomials of degree 20, 40, 80")
    for c in big:
        line = [f"  degree {len(c) - 1:3d}"]
        for name, mod in backends:
            t, _ = best_of(lambda: mod.aberth(c), args.repeat)
            line.append(f"{name} {t * 1e3:8.2f} ms")
        print("  ".join(line))


if __name__ == "__main__":
    main()

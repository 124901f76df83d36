import random

import mpmath
import pytest

from lehmerseq.polycore import IntPoly

LEHMER = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
SMYTH = IntPoly([-1, -1, 0, 1])  # x^3 - x - 1
GOLDEN_SQ = IntPoly([1, -3, 1])  # x^2 - 3x + 1
QUARTIC = IntPoly([1, 1, -1, 1, 1])  # x^4 + x^3 - x^2 + x + 1


def random_poly(rng, max_deg=6, height=9, monic=True, min_deg=1):
    d = rng.randint(min_deg, max_deg)
    c = [rng.randint(-height, height) for _ in range(d)]
    lead = 1 if monic else rng.choice([k for k in range(-height, height + 1) if k])
    return IntPoly(c + [lead])


def numeric_roots(p, dps=60):
    """High-precision roots from mpmath, as an oracle independent of roots.py."""
    with mpmath.workdps(dps):
        return mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=400, extraprec=4 * dps)


@pytest.fixture
def rng():
    return random.Random(20261018)

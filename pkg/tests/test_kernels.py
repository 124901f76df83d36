import os
import subprocess
import sys

import mpmath
import pytest

from lehmerseq import _pykernels, kernels
from lehmerseq.corpus import monic_polys

from .conftest import LEHMER

try:
    from lehmerseq import _ckernels
except ImportError:
    _ckernels = None


def test_python_kernel_against_mpmath():
    for p in list(monic_polys(5, 2, constant_nonzero=True))[::37]:
        with mpmath.workdps(40):
            ref = mpmath.fprod(max(1, abs(r)) for r in mpmath.polyroots(list(reversed(p.coeffs)),
                                                                           maxsteps=300, extraprec=200))
        assert abs(_pykernels.measure(list(p.coeffs)) - float(ref)) < 1e-8 * float(ref)


@pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
def test_backends_agree():
    polys = [p.coeffs for p in monic_polys(6, 1, constant_nonzero=True)]
    a = _pykernels.batch_measure(polys)
    b = _ckernels.batch_measure(polys)
    assert max(abs(x - y) / max(1.0, x) for x, y in zip(a, b)) < 1e-10
    assert abs(_ckernels.measure(list(LEHMER.coeffs)) - 1.1762808182599175) < 1e-12


def test_pure_python_switch():
    env = dict(os.environ, LEHMERSEQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from lehmerseq import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_selected_backend():
    assert kernels.BACKEND in ("python", "cython")
    if _ckernels is not None and not os.environ.get("LEHMERSEQ_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"

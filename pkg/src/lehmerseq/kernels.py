"""Backend selection for the double-precision kernels.

The compiled extension is used when importable; set the environment
variable ``LEHMERSEQ_PURE_PYTHON=1`` to force the pure-Python twin.
"""
import os

BACKEND = "python"

if os.environ.get("LEHMERSEQ_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import aberth, batch_measure, measure
else:
    try:
        from ._ckernels import aberth, batch_measure, measure

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import aberth, batch_measure, measure

__all__ = ["BACKEND", "aberth", "batch_measure", "measure"]

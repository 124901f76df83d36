"""Builds the optional Cython kernels; the package works without them."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LEHMERSEQ_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("lehmerseq._ckernels", ["src/lehmerseq/_ckernels.pyx"],
                       extra_compile_args=["-O3"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

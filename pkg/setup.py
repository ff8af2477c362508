"""Build script.  The compiled kernels are optional: if Cython (or a C
compiler) is unavailable the package installs anyway and falls back to
the pure numpy kernels at import time."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "stitchsampler._ckernels",
        sources=["src/stitchsampler/_ckernels.pyx"],
        # -ffp-contract=off: the fallback kernels must produce bit-identical
        # pair counts, so the C side must not fuse dx*dx + dy*dy into an FMA.
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)

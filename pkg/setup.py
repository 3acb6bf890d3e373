"""Build script: compiles the optional monomial-kernel extension.

If Cython (or a C compiler) is unavailable the build falls back to the
pure-Python kernels; the package works identically either way.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/flatcheck/_kernels/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

"""Builds the optional Cython kernels; the package falls back to pure Python without them."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ULPA_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/ulpa/_kernels.pyx"],
            compiler_directives={"language_level": "3", "boundscheck": False},
        )

setup(ext_modules=ext_modules)

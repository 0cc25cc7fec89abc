"""Build script: compiles the Cython kernel extension when possible.

The package works without the extension (a pure-numpy fallback is selected
at import time), so any failure here downgrades to a warning instead of
aborting the install. Set QSERIES_NO_EXT=1 to skip the extension build.
"""

import os
import warnings

from setuptools import setup

ext_modules = []
if not os.environ.get("QSERIES_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qseries/_kernels_cy.pyx"],
            language_level=3,
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        include_dirs = [numpy.get_include()]
    except ImportError as exc:
        warnings.warn(f"Cython unavailable ({exc}); installing pure-python kernels only")
        include_dirs = []
else:
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)

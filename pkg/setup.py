"""Build script: compiles the closure kernel extension when Cython is available.

Set FORMATIONS_NO_EXT=1 to skip the extension entirely; the package then runs
on the pure-Python kernel selected at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FORMATIONS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "formations._closure",
                    ["src/formations/_closure.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

"""Build script.

The compiled kernel (`carlitz._kernels._speedups`) is optional: if Cython or
a C compiler is unavailable the package installs anyway and falls back to the
pure-Python kernels in `carlitz._kernels.fallback`.
"""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "carlitz._kernels._speedups",
                ["src/carlitz/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"carlitz: building without compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)

"""Build the optional Cython kernels.

The package works without them; ``srgseg._backend`` falls back to the
pure-Python kernels when the extension cannot be imported.
"""
import os
import sys

from setuptools import setup


def _extensions():
    if os.environ.get("SRGSEG_NO_EXT"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        print(f"srgseg: building without compiled kernels ({exc})", file=sys.stderr)
        return []
    ext = Extension(
        "srgseg._kernels",
        ["src/srgseg/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions())

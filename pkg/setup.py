"""Build script: compiles the optional Cython kernel extension.

The extension is an accelerator only.  If Cython or a C compiler is
unavailable the build proceeds without it and the package falls back to
the numpy kernels at import time.
"""

import os

from setuptools import setup

_PYX = "src/mhpref/kernels/_ckernels.pyx"

ext_modules = []
try:
    if not os.path.exists(_PYX):
        raise ImportError
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "mhpref.kernels._ckernels",
                [_PYX],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

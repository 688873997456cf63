import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # numpy kernels take over at import time
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("GENHILBERT_PURE_PYTHON"):
    ext_modules = cythonize(
        [
            Extension(
                "genhilbert._kernels",
                ["src/genhilbert/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)

import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FIDMONO_NO_EXT") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "fidmono._kernels",
                ["src/fidmono/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # complex ops are on finite values only; skip the C99 inf/nan recovery path
                extra_compile_args=["-O3", "-fcx-limited-range"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )

setup(ext_modules=ext_modules)

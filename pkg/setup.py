import os

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; conjprob.kernels falls back to numpy
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("CONJPROB_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "conjprob._ckernels",
                [os.path.join("src", "conjprob", "_ckernels.pyx")],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)

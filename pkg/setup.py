import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and os.environ.get("GEONEST_NO_EXT") != "1":
    ext_modules = cythonize(
        [Extension(
            "geonest._ckernel",
            ["src/geonest/_ckernel.pyx"],
            # keep float results identical to the pure-Python kernel: no FMA
            # contraction and no sin/cos -> sincos fusion
            extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math", "-fno-builtin"],
        )],
        language_level=3,
    )

setup(ext_modules=ext_modules)

import os

from setuptools import Extension, setup


def extensions():
    # COREEP_SKIP_EXT=1 installs the pure-Python package only; the kernel
    # dispatcher falls back to the Python implementation at import time.
    if os.environ.get("COREEP_SKIP_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "coreep._jacobi",
                ["src/coreep/_jacobi.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions())

"""Builds the optional compiled search kernel.

Installation proceeds without it when Cython or a C compiler is missing;
``leafforge.search`` then falls back to the pure-Python kernel.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("LEAFFORGE_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "leafforge._kernel",
                    ["src/leafforge/_kernel.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

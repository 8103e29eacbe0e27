import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ORTHLAT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/orthlat/_fastkernels.pyx"], language_level="3"
        )
    except ImportError:
        # pure-Python fallback is selected at import time
        ext_modules = []

setup(ext_modules=ext_modules)

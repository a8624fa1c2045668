# Builds the optional compiled kernel extension. The package works without it
# (pure-Python fallback is selected at import), so any build failure here is
# non-fatal: install with DRAFTCOACH_NO_EXT=1 to skip compilation entirely.
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DRAFTCOACH_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            "src/draftcoach/kernels/_ckernels.pyx",
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)

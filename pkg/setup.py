# The compiled kernels are optional: without Cython (or a working C
# toolchain) the package installs anyway and falls back to the pure-Python
# implementation in treelat._kernels_py.
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        ["src/treelat/_kernels.pyx"],
        language_level="3",
    )

setup(ext_modules=ext_modules)

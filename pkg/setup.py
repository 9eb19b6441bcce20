"""Build hook for the compiled polynomial kernels.

The package is fully functional without the extension (a pure-Python kernel is
selected at import time), so a missing Cython or compiler only costs speed.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("jetlift._kernel_c", ["src/jetlift/_kernel_c.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)

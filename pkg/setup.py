"""Build glue for the optional compiled kernels.

The extension is marked optional: if Cython or a C compiler is missing the
install still succeeds and the package runs on the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("optseg._kernels", ["src/optseg/_kernels.pyx"], optional=True)],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)

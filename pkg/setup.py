"""Build script: compiles the optional split-search kernel when Cython and a C
compiler are available, and falls back to a pure-Python install otherwise."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("trustsim._splitc", ["src/trustsim/_splitc.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

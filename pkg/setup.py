import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QSUPERHAAR_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("qsuperhaar._polykern", ["src/qsuperhaar/_polykern.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

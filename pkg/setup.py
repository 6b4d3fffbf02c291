import os

from setuptools import setup

ext_modules = []
if os.environ.get("QRTLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("qrtlab._kernel._poly_cy",
                       ["src/qrtlab/_kernel/_poly_cy.pyx"],
                       extra_compile_args=["-O2"])],
            language_level=3,
        )
    except ImportError:
        # pure-Python fallback lane still works without the extension
        ext_modules = []

setup(ext_modules=ext_modules)

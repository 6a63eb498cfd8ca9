from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("trigcasimir._kernel._core", ["src/trigcasimir/_kernel/_core.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # The pure-Python kernel is selected at import time when the extension
    # is missing, so a Cython-less install still works.
    extensions = []

setup(ext_modules=extensions)

"""Build hook for the optional compiled counting kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time); the extension only makes exhaustive
enumeration over S_n fast.  If Cython is unavailable the extension is
simply skipped.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("permdyck._fastcount", ["src/permdyck/_fastcount.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

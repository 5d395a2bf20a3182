"""Build script: compiles the optional elimination kernel.

The compiled extension is a pure speedup; if Cython or a C compiler is
missing the install still succeeds and the package falls back to the
pure-Python backend at import time.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler: fall back to pure Python
            print(f"warning: compiled backend skipped ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "pure-Python backend will be used")


ext_modules = []
if not os.environ.get("COMODCHECK_PURE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("comodcheck._core", ["src/comodcheck/_core.pyx"])],
            language_level="3",
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

"""Build script: compiles the optional scalar-kernel extension.

The compiled kernels are a performance add-on only; the package falls back
to the pure-Python implementation in ``tailbound._kernels._pyfallback`` when
the extension is missing, so a failed compile must not fail the install.
Set TAILBOUND_PURE_PYTHON=1 to skip the extension build entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to a warning when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc}); "
                  "using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "using pure-Python fallback")


ext_modules = []
if not os.environ.get("TAILBOUND_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/tailbound/_kernels/_native.pyx"],
            language_level=3,
        )
    except ImportError:
        print("warning: Cython not available; using pure-Python kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

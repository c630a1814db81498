"""Build script.

The package is pure Python; an optional Cython extension accelerates the
capped polynomial product kernel.  If Cython or a C compiler is missing the
build silently falls back to the pure implementation (set BORDX_PURE=1 to
skip the extension on purpose).
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"bordx: skipping C extension ({exc}); using pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"bordx: failed to build {ext.name} ({exc}); using pure-Python kernel")


ext_modules = []
if os.environ.get("BORDX_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/bordx/_speedups.pyx"], language_level=3, quiet=True
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": _OptionalBuildExt})

"""Build script.  The compiled extension is optional: when Cython or a C
compiler is unavailable the package installs anyway and falls back to the
pure-Python kernels at import time."""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, but tolerate failure; the package works without them."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            sys.stderr.write(f"warning: extension build skipped ({exc})\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"warning: building {ext.name} failed ({exc})\n")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write("warning: Cython unavailable, skipping compiled kernels\n")
        return []
    exts = [
        Extension("joinlab._speedups", ["src/joinlab/_speedups.pyx"]),
    ]
    return cythonize(exts, language_level="3")


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)

"""Build script for the optional compiled similarity kernels.

The package is fully functional without the extension: ``albrec.kernels``
falls back to a pure-Python implementation at import time, so a failed
compile only costs speed.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped ({ext.name}): {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; the pure-Python kernels will be used")
        return []
    return cythonize(
        [Extension("albrec._ckernels", ["src/albrec/_ckernels.pyx"])],
        compiler_directives={"language_level": 3},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

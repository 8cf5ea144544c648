"""Build glue for the optional compiled Louvain kernel.

The package is fully functional without a C compiler: if the extension
cannot be built (or Cython is absent) the install proceeds and the
pure-Python kernel is selected at import time.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from setuptools.errors import CCompilerError, ExecError, PlatformError
except ImportError:  # setuptools < 60
    from distutils.errors import CCompilerError
    from distutils.errors import DistutilsExecError as ExecError
    from distutils.errors import DistutilsPlatformError as PlatformError

_BUILD_ERRORS = (CCompilerError, ExecError, PlatformError, FileNotFoundError, ValueError)


class optional_build_ext(build_ext):
    """Best-effort build: a failed extension downgrades to the Python kernel."""

    def run(self):
        try:
            super().run()
        except _BUILD_ERRORS as exc:
            warnings.warn(f"skipping compiled kernel ({exc}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except _BUILD_ERRORS as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); pure-Python fallback will be used")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "copnet._kernels._louvain_cy",
                ["src/copnet/_kernels/_louvain_cy.pyx"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})

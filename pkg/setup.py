"""Build script: compiles the optional Cython kernel for the Wick engine.

The extension is a pure speed-up; if Cython or a C compiler is missing the
install falls back to the pure-Python engine in ``clusternet._wick_py``.
Set CLUSTERNET_NO_EXTENSION=1 to skip the compilation attempt entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping extension build ({exc}); "
                  "falling back to the pure-Python Wick engine")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "falling back to the pure-Python Wick engine")


ext_modules = []
if os.environ.get("CLUSTERNET_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "clusternet._wick_core",
                    sources=["src/clusternet/_wick_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        print("warning: Cython not available; using the pure-Python Wick engine")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})

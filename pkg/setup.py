"""Builds the optional compiled kernels; the package works without them."""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler / no Cython
            print(f"warning: compiled kernels not built ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using pure Python", file=sys.stderr)


try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("comtrace._ckernels", ["src/comtrace/_ckernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})

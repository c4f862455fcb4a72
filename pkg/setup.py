"""Builds the optional compiled kernel; falls back to pure Python on failure."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/glnwebs/_poly_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"warning: compiled kernel skipped ({exc}); using the pure-Python kernel")

try:
    setup(ext_modules=ext_modules)
except SystemExit:
    print("warning: extension build failed; retrying without compiled kernel")
    setup(ext_modules=[])

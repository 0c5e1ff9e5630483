"""Build script: compiles the optional Cython kernel.

The package works without the extension (pure-Python fallback in
uvknot._kernel_py); the extension only accelerates the hot algebra
primitives.  Build failures are therefore non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/uvknot/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - cython missing or broken
    print(f"uvknot: skipping Cython kernel build ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)

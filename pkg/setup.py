import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUPERMAZE_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; installing the pure-Python kernels only")
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "supermaze._ckernels",
                    ["src/supermaze/_ckernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

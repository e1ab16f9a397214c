import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: every entry
# point has a pure-Python twin in signlab/_kernels_py.py and the import-time
# selector in signlab/kernels.py falls back automatically.  Set
# SIGNLAB_SKIP_EXT=1 to install without building the extension.
ext_modules = []
if not os.environ.get("SIGNLAB_SKIP_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension(
                "signlab._kernels",
                sources=["src/signlab/_kernels.pyx"],
                language="c++",
            )
        ]
        ext_modules = cythonize(
            extensions, compiler_directives={"language_level": "3"}
        )

setup(ext_modules=ext_modules)

"""Build the optional Cython kernels; the package still imports without them."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("QGFUSION_NO_EXT", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("qgfusion._ckernels", ["src/qgfusion/_ckernels.pyx"],
                       include_dirs=[numpy.get_include()],
                       extra_compile_args=["-O3"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)

"""Optional compiled kernels; the package works without them."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("hopfcat._kernels", ["src/hopfcat/_kernels.pyx"],
                   include_dirs=[numpy.get_include()], optional=True)],
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

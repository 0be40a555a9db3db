from setuptools import setup, Extension
from Cython.Build import cythonize
import numpy

ext = Extension(
    "strathom._kernels._fast",
    ["src/strathom/_kernels/_fast.pyx"],
    include_dirs=[numpy.get_include()],
)

setup(ext_modules=cythonize(ext, language_level=3))

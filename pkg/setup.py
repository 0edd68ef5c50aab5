import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# build in place: python3 setup.py build_ext --inplace
extensions = [
    Extension(
        "facility_game._kernels",
        ["src/facility_game/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
)

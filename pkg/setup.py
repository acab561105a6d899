from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "skycover._kernels._flow",
                ["src/skycover/_kernels/_flow.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    # No Cython at build time: install pure-Python only, the kernel
    # dispatcher falls back automatically.
    ext_modules = []

setup(ext_modules=ext_modules)

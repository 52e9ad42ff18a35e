from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "ddisc.linalg._speedups",
                ["src/ddisc/linalg/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    # Without Cython the package still works on the pure Python kernels.
    extensions = []

setup(ext_modules=extensions)

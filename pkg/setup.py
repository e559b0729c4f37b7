from setuptools import Extension, setup
from Cython.Build import cythonize

# No -march=native: keep the kernel FMA-free so the compiled and pure-Python
# backends execute identical IEEE-754 operation sequences.
extensions = [
    Extension(
        "cowit._jacobi",
        ["src/cowit/_jacobi.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)

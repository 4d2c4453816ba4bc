"""Build the optional compiled kernel extension.

The package works without it (pure-Python fallback in dormant._corepure);
the extension only accelerates the mod-p inner loops.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "dormant._corefast",
                ["src/dormant/_corefast.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

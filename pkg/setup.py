from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "mldeg.oracle._newton_cy",
                ["src/mldeg/oracle/_newton_cy.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Cython unavailable: install pure-Python; the oracle falls back at import.
    extensions = []

setup(ext_modules=extensions)

"""Build hooks: compile the optional prime-field kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so any compilation failure downgrades to a pure build
instead of failing the install.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("EXTSYM_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/extsym/_kernels/_corekern.pyx"],
            language_level=3,
        )
    except Exception as exc:  # noqa: BLE001 - any build issue means pure mode
        print(f"kernel extension skipped ({exc}); using pure-Python fallback")

setup(ext_modules=ext_modules)

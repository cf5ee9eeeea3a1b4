import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FQRANK_NO_EXT"):
    try:
        from Cython.Build import cythonize
        import numpy as np
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("fqrank._ckernels", ["src/fqrank/_ckernels.pyx"],
                       include_dirs=[np.get_include()],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)

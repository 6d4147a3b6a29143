"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``ULPA_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("ULPA_PURE_PYTHON"):
    from ._kernels_py import (contract, expand_to, max_depths, mono_mul, mul_terms,
                              normalize_terms, split_singletons)
    BACKEND = "python"
else:
    try:
        from ._kernels import (contract, expand_to, max_depths, mono_mul, mul_terms,
                               normalize_terms, split_singletons)
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import (contract, expand_to, max_depths, mono_mul, mul_terms,
                                  normalize_terms, split_singletons)
        BACKEND = "python"

__all__ = ["BACKEND", "contract", "expand_to", "max_depths", "mono_mul", "mul_terms",
           "normalize_terms", "split_singletons"]

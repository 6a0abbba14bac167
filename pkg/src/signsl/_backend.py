"""Backend selection for the hot numeric kernels.

The environment variable SIGNSL_BACKEND chooses between the numba-compiled
kernels ("numba", default when numba imports) and the pure-Python/numpy
reference path ("numpy").  Both paths run the same source; see
signsl.kernels.build_kernels.
"""

import os


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def selected_backend() -> str:
    env = os.environ.get("SIGNSL_BACKEND", "").strip().lower()
    if env in ("numpy", "python", "nojit"):
        return "numpy"
    if env in ("numba", "jit"):
        return "numba"
    if env:
        raise ValueError(f"unknown SIGNSL_BACKEND value: {env!r}")
    return "numba" if numba_available() else "numpy"


USE_NUMBA = selected_backend() == "numba"

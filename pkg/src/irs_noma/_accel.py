"""Backend switch for the hot numeric kernels.

Kernels are compiled with numba when it is available. Setting
``IRS_NOMA_BACKEND=numpy`` forces the pure-numpy fallbacks (useful for
debugging and for benchmarking the two paths against each other);
``IRS_NOMA_BACKEND=numba`` fails loudly if numba cannot be imported.
"""

import os

_VALID = ("", "auto", "numba", "numpy")


def _resolve_backend() -> bool:
    flag = os.environ.get("IRS_NOMA_BACKEND", "").strip().lower()
    if flag not in _VALID:
        raise RuntimeError(
            f"IRS_NOMA_BACKEND must be one of 'auto', 'numba', 'numpy'; got {flag!r}"
        )
    if flag == "numpy":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag == "numba":
            raise
        return False
    return True


NUMBA_ENABLED = _resolve_backend()


def maybe_jit(func):
    """Compile ``func`` with numba in nopython mode, or return it unchanged."""
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True)(func)
    return func

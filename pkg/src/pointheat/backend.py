"""Kernel backend selection.

The multipole inner loops exist twice: a numba ``@njit`` version and a pure
numpy version.  ``POINTHEAT_BACKEND`` selects between them:

    POINTHEAT_BACKEND=numba   (default) JIT-compiled loops
    POINTHEAT_BACKEND=numpy   vectorized numpy fallback, no numba import

With the default setting the numpy twin is still used as a silent fallback
when numba is not importable.
"""

import os

_VALID = ("numba", "numpy")


def requested_backend() -> str:
    name = os.environ.get("POINTHEAT_BACKEND", "numba").strip().lower()
    if name not in _VALID:
        raise ValueError(f"POINTHEAT_BACKEND must be one of {_VALID}, got {name!r}")
    return name


def active_backend() -> str:
    """Backend actually in use after import fallbacks."""
    name = requested_backend()
    if name == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:
            return "numpy"
    return name

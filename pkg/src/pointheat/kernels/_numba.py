"""JIT-compiled backend: the hot loops from ``_loops`` under ``@njit``."""

import numba

from . import _loops

_OPTS = {"cache": True, "fastmath": False}

sin_cos_scaled = numba.njit(**_OPTS)(_loops.sin_cos_scaled)
jn_down_core = numba.njit(**_OPTS)(_loops.jn_down_core)
h1n_up_scaled = numba.njit(**_OPTS)(_loops.h1n_up_scaled)
psi_logderiv = numba.njit(**_OPTS)(_loops.psi_logderiv)
angular_dyad_per_l = numba.njit(**_OPTS)(_loops.angular_dyad_per_l)

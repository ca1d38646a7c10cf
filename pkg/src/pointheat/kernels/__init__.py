"""Backend-dispatched numeric kernels (see :mod:`pointheat.backend`)."""

from ..backend import active_backend

if active_backend() == "numba":
    from . import _numba as _impl
else:
    from . import _numpy as _impl

BACKEND = active_backend()

sin_cos_scaled = _impl.sin_cos_scaled
jn_down_core = _impl.jn_down_core
h1n_up_scaled = _impl.h1n_up_scaled
psi_logderiv = _impl.psi_logderiv
angular_dyad_per_l = _impl.angular_dyad_per_l


def jn_down_scaled(l_keep: int, z: complex):
    """Scaled spherical Bessel j_l(z) for l = 0..l_keep (z != 0)."""
    z = complex(z)
    sm, se, cm, ce = sin_cos_scaled(z)
    return jn_down_core(l_keep, z, sm, se, cm, ce)

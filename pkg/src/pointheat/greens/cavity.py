"""Mirror spherical cavity: interior coincident-point trace.

The trace is assembled as the free part k/2pi plus Re(T) = -1 times the
m-summed regular-wave dyad traces, so the cavity resonances j_l(kR) = 0 never
enter; the exact mirror result is a null trace at every interior point.
"""

import numpy as np

from .. import kernels
from ..errors import ConvergenceError, DomainError, GeometryError
from ..specfun import bessel, spherical_basis
from .sphere import _scan_blocks, wave_scalars
from .types import GEOMETRY_MARGIN, MirrorCavity, MultipoleConfig


def cavity_regular_per_l(k: float, x1: float, ct: float, st: float, l_hi: int,
                         t_real: float = -1.0) -> np.ndarray:
    """Per-order m-summed regular dyad at a coincident interior point,
    multiplied by a real scattering constant (Re T of the mirror walls)."""
    v, e = bessel.sph_jn_scaled(l_hi, complex(x1))
    coeff = np.full(l_hi + 1, t_real, dtype=np.complex128)
    zeros = np.zeros(l_hi + 1)
    sm, sn_aa, sn_ab, sn_ba, sn_bb = wave_scalars(
        k, x1, x1, v, e, v, e, coeff, zeros, 1.0 + 0.0j)
    return kernels.angular_dyad_per_l(l_hi, ct, st, ct, st, 0.0,
                                      sm, sn_aa, sn_ab, sn_ba, sn_bb)


def im_g_cavity_trace(r1, k: float, env: MirrorCavity,
                      mp: MultipoleConfig | None = None):
    """Sum_i Im G_ii(r1, r1) inside a mirror cavity.

    Returns (value, l_max, tail); the value is the full trace including the
    free part, which the mirror walls cancel to zero.
    """
    mp = mp or MultipoleConfig()
    if k <= 0.0:
        raise DomainError("k must be positive")
    rel = np.asarray(r1, dtype=float) - np.asarray(env.center)
    rn = float(np.linalg.norm(rel))
    if rn >= env.radius * (1.0 - GEOMETRY_MARGIN):
        raise GeometryError("point not strictly inside the cavity")
    if rn == 0.0:
        raise DomainError("offset the point from the exact cavity center")
    _, _, _, rhat, _, _ = spherical_basis(rel)
    ct, st = rhat[2], float(np.hypot(rhat[0], rhat[1]))
    x1 = k * rn
    free_trace = k / (2.0 * np.pi)

    l_floor = max(8, int(np.ceil(np.e * x1 / 2.0)))
    l_hi = min(max(16, l_floor + mp.block * (mp.blocks_required + 1)), mp.l_cap)
    while True:
        per_l = cavity_regular_per_l(k, x1, ct, st, l_hi)
        l_stop, tail = _scan_blocks(per_l, mp, l_floor, scale=free_trace)
        if l_stop is not None:
            scattered = float(np.trace(per_l[: l_stop + 1].sum(axis=0)).real)
            return free_trace + scattered, l_stop, tail
        if l_hi >= mp.l_cap:
            raise ConvergenceError(
                f"cavity trace not converged at the order cap {mp.l_cap}",
                l_max=l_hi, tail=np.inf)
        l_hi = min(2 * l_hi, mp.l_cap)

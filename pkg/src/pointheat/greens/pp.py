"""Green's function of a dipole-approximated (pointlike) scatterer."""

import numpy as np

from ..constants import C
from ..errors import CoincidentPointError
from ..materials import permittivity, polarizability
from .free import g0
from .types import GreensTensor, PointSphere


def g_pp(r, rp, k: float, r0, alpha: complex) -> GreensTensor:
    """G0 plus one scattering off a point polarizability alpha at r0:
    G = G0(r, r') + 4 pi k^2 alpha G0(r, r0) G0(r0, r')."""
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    r0 = np.asarray(r0, dtype=float)
    if np.array_equal(r, r0) or np.array_equal(rp, r0):
        raise CoincidentPointError("observation points must differ from the scatterer")
    scattered = 4.0 * np.pi * k * k * alpha * (g0(r, r0, k) @ g0(r0, rp, k))
    return GreensTensor(g0(r, rp, k) + scattered, l_max=1, tail=0.0)


def g_point_sphere(r, rp, k: float, env: PointSphere) -> GreensTensor:
    """g_pp with alpha derived from the environment sphere's material and radius."""
    eps = permittivity(env.material, C * k)
    alpha = polarizability(eps, env.radius)
    return g_pp(r, rp, k, env.center, alpha)


def pp_trace_coincident(r1, k: float, env: PointSphere) -> complex:
    """Scattered coincident trace 4 pi k^2 alpha tr[G0(r1,r0) G0(r0,r1)]."""
    eps = permittivity(env.material, C * k)
    alpha = polarizability(eps, env.radius)
    r0 = np.asarray(env.center, dtype=float)
    m = g0(r1, r0, k) @ g0(r0, r1, k)
    return complex(4.0 * np.pi * k * k * alpha * np.trace(m))

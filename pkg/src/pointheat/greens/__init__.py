"""Dyadic Green's functions of the supported environments."""

from .cavity import im_g_cavity_trace
from .free import abs_sq_g0_sum, g0, im_g0_trace
from .mie import cavity_t_mirror, mie_t, mie_t_scaled
from .plate import fresnel_coefficients, im_g_trace_plate, im_g_trace_plate_mirror
from .pp import g_point_sphere, g_pp, pp_trace_coincident
from .sphere import ScatteredSum, g_sphere, scattered_sum, sphere_trace_coincident
from .types import (
    GEOMETRY_MARGIN,
    Environment,
    GreensTensor,
    MirrorCavity,
    MultipoleConfig,
    Plate,
    PointSphere,
    Sphere,
    Vacuum,
)

__all__ = [
    "abs_sq_g0_sum",
    "cavity_t_mirror",
    "Environment",
    "fresnel_coefficients",
    "g0",
    "g_point_sphere",
    "g_pp",
    "g_sphere",
    "GEOMETRY_MARGIN",
    "GreensTensor",
    "im_g0_trace",
    "im_g_cavity_trace",
    "im_g_trace_plate",
    "im_g_trace_plate_mirror",
    "MirrorCavity",
    "mie_t",
    "mie_t_scaled",
    "MultipoleConfig",
    "Plate",
    "PointSphere",
    "pp_trace_coincident",
    "ScatteredSum",
    "scattered_sum",
    "Sphere",
    "sphere_trace_coincident",
    "Vacuum",
]

"""Thermal radiation of a point particle and radiative heat transfer between
point particles in structured environments (sphere, plate, mirror cavity,
vacuum), built on a dyadic Green's-function engine."""

__version__ = "0.1.0"

from .constants import C, HBAR, KB
from .greens import (
    GreensTensor,
    MirrorCavity,
    MultipoleConfig,
    Plate,
    PointSphere,
    Sphere,
    Vacuum,
)
from .materials import GOLD, SIC, DielectricModel, ParticleSpec
from .transport import (
    QuadratureConfig,
    TransferResult,
    convergence_study,
    hr,
    hr_isolated_sphere,
    hr_kernel,
    hr_mirror_plate,
    hr_mirror_plate_ratio,
    hr_vacuum,
    ht,
    ht_kernel,
    ht_vacuum,
    net_ht,
    total_absorption,
)

__all__ = [
    "C", "HBAR", "KB", "__version__",
    "GreensTensor", "MirrorCavity", "MultipoleConfig", "Plate", "PointSphere",
    "Sphere", "Vacuum",
    "GOLD", "SIC", "DielectricModel", "ParticleSpec",
    "QuadratureConfig", "TransferResult",
    "convergence_study", "hr", "hr_isolated_sphere", "hr_kernel",
    "hr_mirror_plate", "hr_mirror_plate_ratio", "hr_vacuum",
    "ht", "ht_kernel", "ht_vacuum", "net_ht", "total_absorption",
]

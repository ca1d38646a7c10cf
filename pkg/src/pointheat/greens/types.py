"""Shared value types of the Green's-function layer."""

from dataclasses import dataclass

import numpy as np

from ..materials import DielectricModel


@dataclass(frozen=True)
class GreensTensor:
    """3x3 complex Cartesian dyadic Green's function value (units 1/m)."""

    matrix: np.ndarray
    l_max: int = 0
    tail: float = 0.0


@dataclass(frozen=True)
class MultipoleConfig:
    """Truncation policy for partial-wave sums.

    The sum stops once ``blocks_required`` consecutive blocks of ``block``
    orders each contribute less than ``rel_tol`` of the running norm.
    """

    rel_tol: float = 1e-8
    l_cap: int = 5000
    block: int = 8
    blocks_required: int = 3


@dataclass(frozen=True)
class Vacuum:
    pass


@dataclass(frozen=True)
class Sphere:
    """Homogeneous sphere environment (full Mie scattering)."""

    radius: float
    material: DielectricModel
    mu: float = 1.0
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("sphere radius must be positive")
        object.__setattr__(self, "center", tuple(float(x) for x in self.center))


@dataclass(frozen=True)
class PointSphere:
    """Sphere approximated by its dipole polarizability (single scattering)."""

    radius: float
    material: DielectricModel
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("sphere radius must be positive")
        if self.material.is_mirror:
            raise ValueError("a dipole-approximated sphere needs a finite permittivity")
        object.__setattr__(self, "center", tuple(float(x) for x in self.center))


@dataclass(frozen=True)
class Plate:
    """Half-space z <= 0; evaluation points live at z > 0."""

    material: DielectricModel
    mu: float = 1.0


@dataclass(frozen=True)
class MirrorCavity:
    """Spherical cavity with perfectly reflecting walls; points live inside."""

    radius: float
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("cavity radius must be positive")
        object.__setattr__(self, "center", tuple(float(x) for x in self.center))


GEOMETRY_MARGIN = 1e-12

Environment = Vacuum | Sphere | PointSphere | Plate | MirrorCavity

"""Special functions and vector wave functions."""

from .bessel import (
    L_CAP,
    riccati_deriv,
    scaled_ratio,
    sph_bessel_j,
    sph_bessel_y,
    sph_h1n_scaled,
    sph_hankel1,
    sph_jn_scaled,
    unscale,
)
from .legendre import legendre_companions, pack_index, sph_harmonic
from .waves import plane_wave, spherical_basis, spherical_wave

__all__ = [
    "L_CAP",
    "riccati_deriv",
    "scaled_ratio",
    "sph_bessel_j",
    "sph_bessel_y",
    "sph_h1n_scaled",
    "sph_hankel1",
    "sph_jn_scaled",
    "unscale",
    "legendre_companions",
    "pack_index",
    "sph_harmonic",
    "plane_wave",
    "spherical_basis",
    "spherical_wave",
]

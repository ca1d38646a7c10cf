"""Spherical Bessel and Hankel functions.

Thin public layer over the backend kernels in :mod:`pointheat.kernels`.
Scaled arrays carry values as ``mantissa * exp(exponent)`` so that products
like ``T_l h_l(kr) h_l(kr')`` can be assembled in log space at multipole
orders far beyond the double-precision range.
"""

import numpy as np

from .. import kernels
from ..errors import DomainError, RangeError

# Order cap for the public scalar entry points.
L_CAP = 10_000

_LOG_MAX = 709.0


def sph_jn_scaled(l_max: int, z: complex):
    """j_l(z) for l = 0..l_max as (mantissas, log exponents)."""
    if l_max < 0:
        raise DomainError("l_max must be >= 0")
    z = complex(z)
    if z == 0.0:
        vals = np.zeros(l_max + 1, dtype=np.complex128)
        exps = np.full(l_max + 1, -np.inf)
        vals[0] = 1.0
        exps[0] = 0.0
        return vals, exps
    return kernels.jn_down_scaled(l_max, z)


def sph_h1n_scaled(l_max: int, x: float):
    """h_l(x) (first kind) for l = 0..l_max as (mantissas, log exponents)."""
    if l_max < 0:
        raise DomainError("l_max must be >= 0")
    if x <= 0.0:
        raise DomainError("sph_h1n_scaled requires x > 0")
    return kernels.h1n_up_scaled(l_max, float(x))


def scaled_ratio(vals: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """Ratios f_{l-1}/f_l for l = 1..l_max from a scaled array (entry 0 unused)."""
    out = np.zeros(len(vals), dtype=np.complex128)
    with np.errstate(over="ignore", invalid="ignore"):
        out[1:] = vals[:-1] / vals[1:] * np.exp(exps[:-1] - exps[1:])
    return out


def unscale(vals, exps):
    """Materialize scaled values as plain complex numbers (inf on overflow)."""
    with np.errstate(over="ignore"):
        return vals * np.exp(exps)


def sph_bessel_j(l: int, z: complex, l_cap: int = L_CAP) -> complex:
    """Spherical Bessel function of the first kind, j_l(z), complex argument.

    Raises
    ------
    DomainError
        For l outside [0, l_cap] or non-finite z.
    RangeError
        When the value exceeds the double range (large |Im z|).
    """
    if l < 0 or l > l_cap:
        raise DomainError(f"order {l} outside [0, {l_cap}]")
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise DomainError("argument must be finite")
    vals, exps = sph_jn_scaled(l, z)
    if exps[l] > _LOG_MAX:
        raise RangeError(f"j_{l}({z}) exceeds the double-precision range")
    if np.isneginf(exps[l]):
        return 0.0 + 0.0j
    return complex(vals[l] * np.exp(exps[l]))


def sph_hankel1(l: int, x: float) -> complex:
    """Spherical Hankel function of the first kind, h_l(x), real x > 0.

    Raises
    ------
    DomainError
        For x <= 0 or l < 0.
    RangeError
        When the value overflows doubles; use :func:`sph_h1n_scaled` then.
    """
    if x <= 0.0:
        raise DomainError("sph_hankel1 requires x > 0")
    vals, exps = sph_h1n_scaled(l, float(x))
    if exps[l] > _LOG_MAX:
        raise RangeError(
            f"h_{l}({x}) exceeds the double-precision range; "
            "use sph_h1n_scaled for the scaled representation"
        )
    return complex(vals[l] * np.exp(exps[l]))


def sph_bessel_y(l: int, x: float) -> float:
    """Spherical Bessel function of the second kind, y_l(x) = Im h_l(x)."""
    return sph_hankel1(l, x).imag


def riccati_deriv(kind: str, l: int, x) -> complex:
    """d/dx [x f_l(x)] via x f_{l-1}(x) - l f_l(x), f = j or h."""
    if kind == "j":
        z = complex(x)
        if l == 0:
            return complex(np.cos(z))
        f_l = sph_bessel_j(l, z)
        f_lm1 = sph_bessel_j(l - 1, z)
    elif kind == "h":
        x = float(x)
        if x <= 0.0:
            raise DomainError("riccati_deriv for h requires x > 0")
        if l == 0:
            return complex(np.exp(1j * x))
        f_l = sph_hankel1(l, x)
        f_lm1 = sph_hankel1(l - 1, x)
    else:
        raise DomainError("kind must be 'j' or 'h'")
    return complex(x * f_lm1 - l * f_l)

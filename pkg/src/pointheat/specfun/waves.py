"""Vector wave functions: spherical (M/N, regular/outgoing) and plane waves."""

import numpy as np

from ..errors import DomainError, SingularityError
from . import bessel
from .legendre import legendre_companions, pack_index


def spherical_basis(r: np.ndarray):
    """(r, θ, φ) and the local unit vectors (r̂, θ̂, φ̂) of a Cartesian point.

    On the polar axis φ = 0 is used; all axis evaluations downstream are
    pole-safe, so the choice is immaterial.
    """
    x, y, z = float(r[0]), float(r[1]), float(r[2])
    rho = np.hypot(x, y)
    rn = np.hypot(rho, z)
    theta = np.arctan2(rho, z)
    phi = np.arctan2(y, x)
    if rho == 0.0:
        # exact polar-axis point: keep sin(theta) an exact zero so downstream
        # sums can skip the identically vanishing azimuthal orders
        st, ct = 0.0, (1.0 if z >= 0.0 else -1.0)
    else:
        st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    rhat = np.array([st * cp, st * sp, ct])
    that = np.array([ct * cp, ct * sp, -st])
    phat = np.array([-sp, cp, 0.0])
    return rn, theta, phi, rhat, that, phat


def _angular_with_sign(l: int, m: int, theta: float):
    p, tau, pi_m = legendre_companions(l, theta)
    idx = pack_index(l, abs(m))
    pv, tv, qv = p[idx], tau[idx], pi_m[idx]
    if m < 0:
        sign = (-1) ** (-m)
        pv, tv, qv = sign * pv, sign * tv, -sign * qv
    return pv, tv, qv


def spherical_wave(pol: str, l: int, m: int, regularity: str, k: float, r) -> np.ndarray:
    """Spherical vector wave E_{Plm} at the Cartesian point r (wavenumber k).

    ``pol`` is "M" or "N"; ``regularity`` is "reg" (j_l radial functions) or
    "out" (h_l).  The complex normalization sqrt((-1)^m k) is kept exactly as
    in the wave definitions, so dyad products over (m, -m) carry (-1)^m k.
    """
    if pol not in ("M", "N"):
        raise DomainError("pol must be 'M' or 'N'")
    if regularity not in ("reg", "out"):
        raise DomainError("regularity must be 'reg' or 'out'")
    if l < 1 or abs(m) > l:
        raise DomainError(f"require l >= 1 and |m| <= l, got l={l}, m={m}")
    if k <= 0.0:
        raise DomainError("k must be positive")
    r = np.asarray(r, dtype=float)
    rn, theta, phi, rhat, that, phat = spherical_basis(r)
    x = k * rn
    if rn == 0.0:
        if regularity == "out":
            raise SingularityError("outgoing wave evaluated at the origin")
        # regular waves at the origin: only the l=1 electric wave survives
        if pol == "M" or l > 1:
            return np.zeros(3, dtype=np.complex128)
        a_rad = 2.0 / 3.0
        b_rad = 2.0 / 3.0
        fl = 0.0
    elif regularity == "reg":
        vj, ej = bessel.sph_jn_scaled(l, complex(x))
        f = bessel.unscale(vj, ej)
        fl = f[l]
        a_rad = l * (l + 1) * fl / x
        b_rad = (x * f[l - 1] - l * fl) / x
    else:
        vh, eh = bessel.sph_h1n_scaled(l, x)
        f = bessel.unscale(vh, eh)
        if not np.all(np.isfinite(f.view(float))):
            raise bessel.RangeError(
                "outgoing wave exceeds double range; reduce l or increase kr"
            )
        fl = f[l]
        a_rad = l * (l + 1) * fl / x
        b_rad = (x * f[l - 1] - l * fl) / x

    pv, tv, qv = _angular_with_sign(l, m, theta)
    pref = np.sqrt(complex((-1) ** m * k)) / np.sqrt(l * (l + 1))
    phase = np.exp(1j * m * phi)
    if pol == "M":
        vec = fl * (1j * qv * that - tv * phat)
    else:
        vec = a_rad * pv * rhat + b_rad * (tv * that + 1j * qv * phat)
    return pref * phase * vec.astype(np.complex128)


def plane_wave(pol: str, kperp, k: float, xperp, z: float) -> np.ndarray:
    """Plane vector waves M and N± of a layered geometry.

    ``kperp`` and ``xperp`` are real 2-vectors; k_z = sqrt(k² - |k⊥|²) on the
    branch with non-negative imaginary part (evanescent for |k⊥| > k).
    """
    if pol not in ("M", "N+", "N-"):
        raise DomainError("pol must be 'M', 'N+' or 'N-'")
    kperp = np.asarray(kperp, dtype=float)
    xperp = np.asarray(xperp, dtype=float)
    kx, ky = kperp
    kp = np.hypot(kx, ky)
    if kp == 0.0:
        raise DomainError("plane waves are defined for |k_perp| > 0")
    if k <= 0.0:
        raise DomainError("k must be positive")
    kz = np.sqrt(complex(k * k - kp * kp))
    if kz.imag < 0.0:
        kz = -kz
    phase = np.exp(1j * (kx * xperp[0] + ky * xperp[1] + kz * z))
    if pol == "M":
        vec = np.array([ky, -kx, 0.0], dtype=np.complex128) / kp
    else:
        s = 1.0 if pol == "N+" else -1.0
        vec = np.array([s * kx * kz, s * ky * kz, kp * kp], dtype=np.complex128) / (k * kp)
    return vec * phase

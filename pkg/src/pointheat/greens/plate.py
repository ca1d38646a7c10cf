"""Half-space (plate) environment: coincident-point trace of the reflected
Green's function, closed form for a mirror and k-perp quadrature otherwise."""

import numpy as np

from ..errors import AccuracyError, DomainError
from ..quadrature import adaptive_integral


def im_g_trace_plate_mirror(d: float, k: float) -> float:
    """Sum_i Im G_ii(r1, r1) at height d above a perfect mirror (closed form)."""
    if d <= 0.0:
        raise DomainError("distance to the plate must be positive")
    if k <= 0.0:
        raise DomainError("k must be positive")
    y = 2.0 * k * d
    bracket = -np.sin(y) + y * np.cos(y) + 0.5 * y * y * np.sin(y)
    return k / (2.0 * np.pi) - bracket / (8.0 * np.pi * k * k * d**3)


def fresnel_coefficients(kperp, k: float, eps, mu: float = 1.0):
    """Reflection coefficients (r_M, r_N) of the half-space at lateral
    wavevector kperp; both k_z branches take non-negative imaginary part."""
    kperp = np.asarray(kperp, dtype=float)
    kz = np.sqrt((k * k - kperp * kperp).astype(complex))
    kz = np.where(kz.imag < 0.0, -kz, kz)
    kz_in = np.sqrt(eps * mu * k * k - kperp * kperp + 0j)
    kz_in = np.where(kz_in.imag < 0.0, -kz_in, kz_in)
    r_m = (mu * kz - kz_in) / (mu * kz + kz_in)
    r_n = (eps * kz - kz_in) / (eps * kz + kz_in)
    return r_m, r_n


def im_g_trace_plate(d: float, k: float, eps=None, mu: float = 1.0,
                     rel_tol: float = 1e-10, max_panels: int = 3000) -> float:
    """Sum_i Im G_ii(r1, r1) at height d above a half-space of permittivity eps.

    ``eps=None`` selects the perfect-mirror coefficients r_M = -1, r_N = +1
    (the quadrature twin of :func:`im_g_trace_plate_mirror`).  The lateral
    integral is split at k_perp = k: the propagating sector in the incidence
    angle, the evanescent sector in the decay constant, truncated once
    exp(-2 kappa d) is below 1e-16.
    """
    if d <= 0.0 or k <= 0.0:
        raise DomainError("require d > 0 and k > 0")
    if eps is not None and complex(eps).imag < 0.0:
        raise DomainError("passivity requires Im eps >= 0")

    def coeffs(kperp):
        if eps is None:
            shape = np.shape(kperp)
            return -np.ones(shape, dtype=complex), np.ones(shape, dtype=complex)
        return fresnel_coefficients(kperp, k, complex(eps), mu)

    def f_prop(theta):
        st, ct = np.sin(theta), np.cos(theta)
        r_m, r_n = coeffs(k * st)
        return 1j * k / (4.0 * np.pi) * st * np.exp(2j * k * d * ct) * (
            r_m + r_n * (st * st - ct * ct))

    def f_evan(kappa):
        kperp = np.sqrt(k * k + kappa * kappa)
        r_m, r_n = coeffs(kperp)
        return np.exp(-2.0 * kappa * d) / (4.0 * np.pi) * (
            r_m + r_n * (k * k + 2.0 * kappa * kappa) / (k * k))

    # phase 2kd across the propagating sector sets the oscillation count
    n_seed = max(8, int(k * d))
    seeds_p = np.linspace(0.0, np.pi / 2.0, n_seed + 1)[1:-1]
    res_p = adaptive_integral(f_prop, 0.0, np.pi / 2.0, rel_tol,
                              seed_points=seeds_p, max_panels=max_panels)
    kappa_max = -np.log(1e-16) / (2.0 * d)
    seeds_e = kappa_max * np.array([0.01, 0.05, 0.1, 0.25, 0.5])
    res_e = adaptive_integral(f_evan, 0.0, kappa_max, rel_tol,
                              seed_points=seeds_e, max_panels=max_panels)
    if not (res_p.converged and res_e.converged):
        raise AccuracyError(
            "plate trace quadrature did not reach the requested tolerance",
            best=k / (2.0 * np.pi) + complex(res_p.value).imag + complex(res_e.value).imag,
            error=res_p.error + res_e.error)
    return k / (2.0 * np.pi) + complex(res_p.value).imag + complex(res_e.value).imag

"""Free-space dyadic Green's function (closed form) and its analytic traces."""

import numpy as np

from ..errors import CoincidentPointError, DomainError


def g0(r, rp, k: float) -> np.ndarray:
    """Free-space dyadic Green's function G0(r, r') at wavenumber k (units 1/m).

    Closed-form separated-point expression; the coincident-point delta term is
    never included.
    """
    if k <= 0.0:
        raise DomainError("k must be positive")
    r = np.asarray(r, dtype=float)
    rp = np.asarray(rp, dtype=float)
    dvec = r - rp
    d = float(np.linalg.norm(dvec))
    if d == 0.0:
        raise CoincidentPointError("G0 evaluated at coincident points")
    kd = k * d
    pref = np.exp(1j * kd) / (4.0 * np.pi * k * k * d**5)
    iso = d * d * (-1.0 + 1j * kd + kd * kd)
    aniso = 3.0 - 3j * kd - kd * kd
    return pref * (iso * np.eye(3) + aniso * np.outer(dvec, dvec))


def im_g0_trace(k: float) -> float:
    """Sum_i Im G0_ii(r, r) = k / (2 pi), the free-space coincident trace."""
    if k <= 0.0:
        raise DomainError("k must be positive")
    return k / (2.0 * np.pi)


def abs_sq_g0_sum(d: float, k: float) -> float:
    """Sum_ij |G0_ij(r2, r1)|^2 for separated points at distance d (closed form)."""
    if d <= 0.0:
        raise CoincidentPointError("requires separated points")
    if k <= 0.0:
        raise DomainError("k must be positive")
    kd = k * d
    return (1.0 + kd**-2 + 3.0 * kd**-4) / (8.0 * np.pi**2 * d * d)

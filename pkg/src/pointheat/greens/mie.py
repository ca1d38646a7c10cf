"""Mie scattering elements of a homogeneous sphere and of a mirror cavity.

Everything is computed from ratios and logarithmic derivatives so that no
intermediate Bessel value overflows, up to the configured order cap.
"""

import numpy as np

from .. import kernels
from ..errors import DomainError, RangeError, ResonancePoleError
from ..specfun import bessel

# Interior arguments beyond this make the log-derivative recursion pointless;
# such spheres are numerically perfect reflectors.
INTERIOR_ARG_CAP = 3e4


def _ratio_arrays(l_max: int, x: float):
    """Scaled j, h at real x plus the ratio combinations entering the elements."""
    vj, ej = bessel.sph_jn_scaled(l_max, complex(x))
    vh, eh = bessel.sph_h1n_scaled(l_max, x)
    ls = np.arange(l_max + 1, dtype=float)
    rj = bessel.scaled_ratio(vj, ej)  # j_{l-1}/j_l
    rh = bessel.scaled_ratio(vh, eh)
    d_psi = rj - ls / x   # psi_l'/psi_l at x
    g_xi = rh - ls / x    # xi_l'/xi_l at x
    jh_m = vj / vh
    jh_e = ej - eh
    return vj, ej, vh, eh, d_psi, g_xi, jh_m, jh_e


def mie_t_scaled(l_max: int, k: float, radius: float, eps=None, mu: float = 1.0,
                 mirror: bool = False):
    """Scattering elements T_l^M, T_l^N for l = 1..l_max in scaled form.

    Returns (tm_m, tm_e, tn_m, tn_e); entry 0 is unused.  ``mirror=True``
    selects the perfect-reflector closed forms; otherwise ``eps`` is the
    (complex) permittivity at the evaluation frequency.
    """
    x = k * radius
    if x <= 0.0:
        raise DomainError("kR must be positive")
    if l_max < 1:
        raise DomainError("l_max must be >= 1")
    _, _, _, _, d_psi, g_xi, jh_m, jh_e = _ratio_arrays(l_max, x)

    if mirror:
        return _mirror_t_scaled(l_max, x)
    else:
        if eps is None:
            raise DomainError("finite-permittivity elements need eps")
        eps = complex(eps)
        m_ref = np.sqrt(eps * mu)
        y = m_ref * x
        if abs(y) > INTERIOR_ARG_CAP:
            raise DomainError(
                f"interior argument |sqrt(eps mu) k R| = {abs(y):.3g} too large; "
                "use the mirror variant for quasi-perfect reflectors"
            )
        d_int = kernels.psi_logderiv(l_max, complex(y))
        with np.errstate(invalid="ignore"):
            fac_m = (mu * d_psi - m_ref * d_int) / (mu * g_xi - m_ref * d_int)
            fac_n = (eps * d_psi - m_ref * d_int) / (eps * g_xi - m_ref * d_int)

    tm_m = -jh_m * fac_m
    tn_m = -jh_m * fac_n
    tm_e = jh_e.copy()
    tn_e = jh_e.copy()
    for vals, exps in ((tm_m, tm_e), (tn_m, tn_e)):
        mags = np.abs(vals)
        nz = mags > 0.0
        exps[nz] += np.log(mags[nz])
        vals[nz] /= mags[nz]
        exps[~nz] = -np.inf
        vals[0] = 0.0
        exps[0] = -np.inf
    return tm_m, tm_e, tn_m, tn_e


def _mirror_t_scaled(l_max: int, x: float):
    """Perfect-reflector elements -j/h and -(xj)'/(xh)'.

    Built as -1/(1 + i q) with q the ratio of the y-type to the j-type radial
    factor, so that the lossless-scatterer identity Re T + |T|^2 = 0 holds
    exactly element by element (Re h_l = j_l for real arguments).
    """
    vj, ej = bessel.sph_jn_scaled(l_max, complex(x))
    vh, eh = bessel.sph_h1n_scaled(l_max, x)
    ls = np.arange(l_max + 1, dtype=float)
    j = vj.real
    y = vh.imag
    # Riccati derivatives (x f_l)' = x f_{l-1} - l f_l at the native exponents
    jp = np.zeros(l_max + 1)
    yp = np.zeros(l_max + 1)
    jp[1:] = x * j[:-1] * np.exp(ej[:-1] - ej[1:]) - ls[1:] * j[1:]
    yp[1:] = x * y[:-1] * np.exp(eh[:-1] - eh[1:]) - ls[1:] * y[1:]

    out = []
    for num, den in ((y, j), (yp, jp)):
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            q = num / den * np.exp(eh - ej)
            t = -1.0 / (1.0 + 1j * q)
            fallback = ~np.isfinite(q)
        t_e = np.zeros(l_max + 1)
        if np.any(fallback):
            # deep decay or an interior zero of j: T = i (j-part)/(y-part),
            # purely imaginary with a genuinely scaled magnitude; a vanishing
            # y-part means h = j there, i.e. T = -1 exactly
            idx = np.nonzero(fallback)[0]
            nz = idx[num[idx] != 0.0]
            t[nz] = 1j * den[nz] / num[nz]
            t_e[nz] = ej[nz] - eh[nz]
            t[idx[num[idx] == 0.0]] = -1.0
        # canonical unit mantissas (downstream overflow guards rely on it)
        mags = np.abs(t)
        nz = mags > 0.0
        t_e[nz] += np.log(mags[nz])
        t[nz] /= mags[nz]
        t_e[~nz] = -np.inf
        t[0] = 0.0
        t_e[0] = -np.inf
        out.extend((t, t_e))
    tm_m, tm_e, tn_m, tn_e = out
    return tm_m, tm_e, tn_m, tn_e


def mie_t(l: int, pol: str, k: float, radius: float, eps=None, mu: float = 1.0,
          mirror: bool = False) -> complex:
    """Single Mie element T_l^P of a homogeneous (or perfectly reflecting) sphere."""
    if pol not in ("M", "N"):
        raise DomainError("pol must be 'M' or 'N'")
    if l < 1:
        raise DomainError("l must be >= 1")
    tm_m, tm_e, tn_m, tn_e = mie_t_scaled(l, k, radius, eps=eps, mu=mu, mirror=mirror)
    vals, exps = (tm_m, tm_e) if pol == "M" else (tn_m, tn_e)
    if exps[l] > 700.0:
        raise RangeError("Mie element overflow")
    if np.isneginf(exps[l]):
        return 0.0 + 0.0j
    return complex(vals[l] * np.exp(exps[l]))


def cavity_t_mirror(l: int, pol: str, x: float) -> complex:
    """Inside-scattering element of a perfectly reflecting spherical cavity.

    T_l^M = -h_l(kR)/j_l(kR) and T_l^N with the Riccati derivatives instead.
    Since Re h_l = j_l for real arguments, the element is assembled as
    -1 - i y_l/j_l, which keeps Re T = -1 exact at any order.  Raises near the
    cavity resonances j_l(kR) = 0 (the resonance-free trace path substitutes
    Re T = -1 analytically and never calls this).
    """
    if pol not in ("M", "N"):
        raise DomainError("pol must be 'M' or 'N'")
    if l < 1:
        raise DomainError("l must be >= 1")
    if x <= 0.0:
        raise DomainError("kR must be positive")
    vj, ej = bessel.sph_jn_scaled(l, complex(x))
    vh, eh = bessel.sph_h1n_scaled(l, x)
    if pol == "M":
        num_m, num_e = vh[l].imag, eh[l]          # y_l, scaled
        den_m, den_e = vj[l].real, ej[l]          # j_l, scaled
    else:
        # Riccati derivatives (x f_l)' = x f_{l-1} - l f_l for y and for j
        num_m = x * vh[l - 1].imag * np.exp(eh[l - 1] - eh[l]) - l * vh[l].imag
        num_e = eh[l]
        den_m = x * vj[l - 1].real * np.exp(ej[l - 1] - ej[l]) - l * vj[l].real
        den_e = ej[l]
    # log magnitudes of numerator (y side) and denominator (j side)
    log_num = num_e + np.log(max(abs(num_m), 1e-300))
    log_den = den_e + np.log(max(abs(den_m), 1e-300))
    # interior modes only exist in the oscillatory regime x >~ l; tiny j below
    # the turning point is the regular exponential decay, not a resonance
    if x > l - 2 and log_den < log_num + np.log(1e-12):
        raise ResonancePoleError(
            f"cavity resonance: the order-{l} interior mode is singular at kR = {x}"
        )
    if log_num - log_den > 700.0:
        raise RangeError("cavity element overflow")
    return complex(-1.0, -num_m / den_m * np.exp(num_e - den_e))

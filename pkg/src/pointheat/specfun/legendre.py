"""Normalized associated Legendre functions and their pole-safe companions.

All three families (value, theta derivative, m/sin(theta) scaled value) come
from recurrences in cos(theta) only, so evaluations on the polar axis are
exact zeros/finite numbers rather than 0/0.
"""

import numpy as np

from ..errors import DomainError

_INV_SQRT_4PI = 0.28209479177387814


def pack_index(l: int, m: int) -> int:
    """Index of (l, m>=0) in the packed triangular tables."""
    return l * (l + 1) // 2 + m


def legendre_companions(l_max: int, theta: float):
    """Tables of normalized Legendre P̄_l^m(cos θ), dP̄/dθ and m P̄/sin θ.

    Returns three float arrays packed over (l, m >= 0) via :func:`pack_index`.
    Negative m follow from parity: P̄ and dP̄/dθ pick up (-1)^m, the scaled
    value picks up -(-1)^m.
    """
    if l_max < 0:
        raise DomainError("l_max must be >= 0")
    ct = np.cos(theta)
    st = np.sin(theta)
    size = pack_index(l_max, l_max) + 1
    p = np.zeros(size)
    tau = np.zeros(size)
    pi_m = np.zeros(size)
    p[0] = _INV_SQRT_4PI

    pa = np.zeros(l_max + 2)  # degree l-1 row
    pb = np.zeros(l_max + 2)  # degree l-2 row
    qa = np.zeros(l_max + 2)
    qb = np.zeros(l_max + 2)
    pa[0] = _INV_SQRT_4PI

    for l in range(1, l_max + 1):
        fl = float(l)
        m = np.arange(l, dtype=float)
        c1 = np.sqrt((4.0 * fl * fl - 1.0) / (fl * fl - m * m))
        if l > 1:
            c2 = np.sqrt(
                np.maximum((fl - 1.0) ** 2 - m * m, 0.0)
                / (4.0 * (fl - 1.0) ** 2 - 1.0)
            )
        else:
            c2 = np.zeros(1)
        pc = np.zeros(l_max + 2)
        qc = np.zeros(l_max + 2)
        pc[:l] = c1 * (ct * pa[:l] - c2 * pb[:l])
        qc[:l] = c1 * (ct * qa[:l] - c2 * qb[:l])
        dl = np.sqrt((2.0 * fl + 1.0) / (2.0 * fl))
        pc[l] = -dl * st * pa[l - 1]
        qc[l] = -fl * dl * pa[l - 1]

        mt = np.arange(l + 1, dtype=float)
        cp = np.sqrt((fl - mt) * (fl + mt + 1.0))
        cm = np.sqrt((fl + mt) * (fl - mt + 1.0))
        tc = np.empty(l + 1)
        tc[0] = np.sqrt(fl * (fl + 1.0)) * pc[1]
        tc[1:] = 0.5 * (cp[1:] * pc[2 : l + 2] - cm[1:] * pc[0:l])

        base = pack_index(l, 0)
        p[base : base + l + 1] = pc[: l + 1]
        tau[base : base + l + 1] = tc
        pi_m[base : base + l + 1] = qc[: l + 1]

        pb, pa = pa, pc
        qb, qa = qa, qc

    return p, tau, pi_m


def sph_harmonic(l: int, m: int, theta: float, phi: float):
    """Spherical harmonic Y_l^m(θ, φ) with its angular companions.

    Returns
    -------
    (y, dy_dtheta, m_over_sin_y)
        Y_l^m, dY_l^m/dθ, and (m / sin θ) Y_l^m, the latter two finite on the
        polar axis by construction.
    """
    if abs(m) > l or l < 0:
        raise DomainError(f"require |m| <= l, got l={l}, m={m}")
    p, tau, pi_m = legendre_companions(l, theta)
    idx = pack_index(l, abs(m))
    pv, tv, qv = p[idx], tau[idx], pi_m[idx]
    if m < 0:
        sign = (-1) ** (-m)
        pv, tv, qv = sign * pv, sign * tv, -sign * qv
    phase = np.exp(1j * m * phi)
    return pv * phase, tv * phase, qv * phase

"""Pure-numpy backend.

The strictly sequential recurrences reuse the plain-Python loop code; the
per-order angular reduction is re-implemented with vectorized numpy over the
azimuthal index, which is where a fallback without numba would otherwise crawl.
"""

import numpy as np

from ._loops import _INV_SQRT_4PI, h1n_up_scaled, jn_down_core, psi_logderiv, sin_cos_scaled

__all__ = [
    "sin_cos_scaled",
    "jn_down_core",
    "h1n_up_scaled",
    "psi_logderiv",
    "angular_dyad_per_l",
]


def angular_dyad_per_l(l_max, ct1, st1, ct2, st2, dphi, sm, sn_aa, sn_ab, sn_ba, sn_bb):
    """Vectorized twin of :func:`pointheat.kernels._loops.angular_dyad_per_l`."""
    out = np.zeros((l_max + 1, 3, 3), dtype=np.complex128)

    ms = np.arange(l_max + 1, dtype=float)
    cosd = np.cos(ms * dphi)
    sind = np.sin(ms * dphi)

    n_buf = l_max + 2
    p1a, p1b, p1c = np.zeros(n_buf), np.zeros(n_buf), np.zeros(n_buf)
    q1a, q1b, q1c = np.zeros(n_buf), np.zeros(n_buf), np.zeros(n_buf)
    p2a, p2b, p2c = np.zeros(n_buf), np.zeros(n_buf), np.zeros(n_buf)
    q2a, q2b, q2c = np.zeros(n_buf), np.zeros(n_buf), np.zeros(n_buf)
    p1a[0] = _INV_SQRT_4PI
    p2a[0] = _INV_SQRT_4PI

    # exact polar-axis fast path, identical bits to the full loop (all skipped
    # azimuthal orders carry sin(theta)^m = 0 exactly)
    on_axis = st1 == 0.0 and st2 == 0.0

    for l in range(1, l_max + 1):
        fl = float(l)
        row_hi = l if not on_axis else min(l, 3)
        sum_hi = l if not on_axis else 1
        m = ms[:row_hi]
        c1 = np.sqrt((4.0 * fl * fl - 1.0) / (fl * fl - m * m))
        c2 = np.sqrt(
            np.maximum((fl - 1.0) ** 2 - m * m, 0.0) / (4.0 * (fl - 1.0) ** 2 - 1.0)
        ) if l > 1 else np.zeros(1)

        p1c[:row_hi] = c1 * (ct1 * p1a[:row_hi] - c2 * p1b[:row_hi])
        q1c[:row_hi] = c1 * (ct1 * q1a[:row_hi] - c2 * q1b[:row_hi])
        p2c[:row_hi] = c1 * (ct2 * p2a[:row_hi] - c2 * p2b[:row_hi])
        q2c[:row_hi] = c1 * (ct2 * q2a[:row_hi] - c2 * q2b[:row_hi])
        dl = np.sqrt((2.0 * fl + 1.0) / (2.0 * fl))
        p1c[l] = -dl * st1 * p1a[l - 1]
        q1c[l] = -fl * dl * p1a[l - 1]
        p2c[l] = -dl * st2 * p2a[l - 1]
        q2c[l] = -fl * dl * p2a[l - 1]
        p1c[l + 1] = 0.0
        q1c[l + 1] = 0.0
        p2c[l + 1] = 0.0
        q2c[l + 1] = 0.0

        hi = min(sum_hi, l) + 1
        mt = ms[:hi]
        cp = np.sqrt((fl - mt) * (fl + mt + 1.0))
        cmn = np.sqrt((fl + mt) * (fl - mt + 1.0))
        t1 = np.empty(hi)
        t2 = np.empty(hi)
        t1[0] = np.sqrt(fl * (fl + 1.0)) * p1c[1]
        t2[0] = np.sqrt(fl * (fl + 1.0)) * p2c[1]
        t1[1:] = 0.5 * (cp[1:] * p1c[2 : hi + 1] - cmn[1:] * p1c[0 : hi - 1])
        t2[1:] = 0.5 * (cp[1:] * p2c[2 : hi + 1] - cmn[1:] * p2c[0 : hi - 1])

        wc = 2.0 * cosd[1:hi]
        ws = 2.0 * sind[1:hi]
        p1s = p1c[1:hi]
        p2s = p2c[1:hi]
        q1s = q1c[1:hi]
        q2s = q2c[1:hi]
        t1s = t1[1:]
        t2s = t2[1:]

        u_pp = p1c[0] * p2c[0] + np.dot(wc, p1s * p2s)
        u_pt = p1c[0] * t2[0] + np.dot(wc, p1s * t2s)
        u_tp = t1[0] * p2c[0] + np.dot(wc, t1s * p2s)
        u_tt = t1[0] * t2[0] + np.dot(wc, t1s * t2s)
        u_qq = np.dot(wc, q1s * q2s)
        v_qt = np.dot(ws, q1s * t2s)
        v_tq = np.dot(ws, t1s * q2s)
        v_pq = np.dot(ws, p1s * q2s)
        v_qp = np.dot(ws, q1s * p2s)

        out[l, 0, 0] = sn_aa[l] * u_pp
        out[l, 0, 1] = sn_ab[l] * u_pt
        out[l, 0, 2] = sn_ab[l] * v_pq
        out[l, 1, 0] = sn_ba[l] * u_tp
        out[l, 1, 1] = sm[l] * u_qq + sn_bb[l] * u_tt
        out[l, 1, 2] = sm[l] * v_qt + sn_bb[l] * v_tq
        out[l, 2, 0] = -sn_ba[l] * v_qp
        out[l, 2, 1] = -sm[l] * v_tq - sn_bb[l] * v_qt
        out[l, 2, 2] = sm[l] * u_tt + sn_bb[l] * u_qq

        p1a, p1b, p1c = p1c, p1a, p1b
        q1a, q1b, q1c = q1c, q1a, q1b
        p2a, p2b, p2c = p2c, p2a, p2b
        q2a, q2b, q2c = q2c, q2a, q2b

    return out

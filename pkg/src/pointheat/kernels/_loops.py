"""Loop implementations of the hot numeric kernels.

Plain Python/numpy code written so that :mod:`pointheat.kernels._numba` can
compile every function with ``@njit`` unchanged.  The vectorized twins live in
:mod:`pointheat.kernels._numpy`.

Scaled representation: a pair ``(vals, exps)`` encodes ``vals[l] * exp(exps[l])``
with unit-magnitude mantissas, so arbitrarily large multipole orders never
overflow before the physically bounded combinations are assembled.
"""

import cmath
import math

import numpy as np

_RESCALE = 1e250
_INV_SQRT_4PI = 0.28209479177387814


def sin_cos_scaled(z):
    """(sin z, cos z) as unit mantissa / log-magnitude pairs, safe for large |Im z|."""
    if z.imag > 700.0:
        damp = cmath.exp(2j * z.real - 2.0 * z.imag)
        sm = -cmath.exp(-1j * z.real) * (1.0 - damp) / 2j
        cm = cmath.exp(-1j * z.real) * (1.0 + damp) / 2.0
        return sm, z.imag, cm, z.imag
    if z.imag < -700.0:
        damp = cmath.exp(-2j * z.real + 2.0 * z.imag)
        sm = cmath.exp(1j * z.real) * (1.0 - damp) / 2j
        cm = cmath.exp(1j * z.real) * (1.0 + damp) / 2.0
        return sm, -z.imag, cm, -z.imag
    s = cmath.sin(z)
    c = cmath.cos(z)
    se = -math.inf
    ce = -math.inf
    if abs(s) > 0.0:
        se = math.log(abs(s))
        s = s / abs(s)
    if abs(c) > 0.0:
        ce = math.log(abs(c))
        c = c / abs(c)
    return s, se, c, ce


def jn_down_core(l_keep, z, sm, se, cm, ce):
    """Scaled spherical Bessel j_l(z), l = 0..l_keep, by downward recurrence.

    ``sm, se, cm, ce`` are the scaled sin/cos of z from :func:`sin_cos_scaled`
    (passed in so both backends can compile this core standalone).  Normalized
    against the closed forms of j_0 or j_1, whichever is larger in magnitude
    (guards against zeros of sin z).  Caller guarantees z != 0.
    """
    l_hi = l_keep if l_keep >= 1 else 1
    vals = np.zeros(l_hi + 1, dtype=np.complex128)
    exps = np.full(l_hi + 1, -math.inf)

    az = abs(z)
    n_start = l_hi + int(math.ceil(az)) + 16 + int(math.ceil(7.0 * az ** (1.0 / 3.0)))
    inv_z = 1.0 / z
    step_bound = (2.0 * n_start + 3.0) * abs(inv_z) + 1.0
    trigger = min(_RESCALE, 1e280 / step_bound)

    b_next = 0.0 + 0.0j
    b_cur = 1e-30 + 0.0j
    sigma = 0.0
    for n in range(n_start, 0, -1):
        b_prev = (2.0 * n + 1.0) * inv_z * b_cur - b_next
        mag = abs(b_prev)
        if mag > trigger:
            b_prev /= mag
            b_cur /= mag
            sigma += math.log(mag)
        if n - 1 <= l_hi:
            vals[n - 1] = b_prev
            exps[n - 1] = sigma
        b_next = b_cur
        b_cur = b_prev

    lz = math.log(az)
    j0_m = sm / z * az
    j0_e = se - lz
    # j1 = (sin z / z - cos z) / z, combined at a common exponent
    shift = j0_e if j0_e > ce else ce
    num = j0_m * math.exp(j0_e - shift) - cm * math.exp(ce - shift)
    j1_m = num / z * az
    j1_e = shift - lz
    a1 = abs(j1_m)
    if a1 > 0.0:
        j1_e += math.log(a1)
        j1_m /= a1
    else:
        j1_e = -math.inf

    if j0_e >= j1_e:
        l_ref = 0
        ref_m, ref_e = j0_m, j0_e
    else:
        l_ref = 1
        ref_m, ref_e = j1_m, j1_e

    # j_l = F_l * (j_ref / F_ref)
    base_m = vals[l_ref]
    base_e = exps[l_ref] + math.log(abs(base_m))
    base_m = base_m / abs(base_m)
    for l in range(l_hi + 1):
        v = vals[l] * (ref_m / base_m)
        a = abs(v)
        if a > 0.0:
            vals[l] = v / a
            exps[l] = exps[l] - base_e + ref_e + math.log(a)
        else:
            vals[l] = 0.0
            exps[l] = -math.inf
    return vals[: l_keep + 1], exps[: l_keep + 1]


def h1n_up_scaled(l_max, x):
    """Scaled spherical Hankel h_l(x) (first kind), l = 0..l_max, real x > 0."""
    vals = np.zeros(l_max + 1, dtype=np.complex128)
    exps = np.zeros(l_max + 1)
    phase = cmath.exp(1j * x)
    h_prev = -1j * phase / x
    a = abs(h_prev)
    vals[0] = h_prev / a
    exps[0] = math.log(a)
    if l_max == 0:
        return vals, exps
    h_cur = -phase * (1.0 + 1j / x) / x
    a = abs(h_cur)
    vals[1] = h_cur / a
    exps[1] = math.log(a)
    # carry the un-normalized pair with a running scale for the recurrence
    sigma = 0.0
    h_prev = -1j * phase / x
    h_cur = -phase * (1.0 + 1j / x) / x
    for l in range(1, l_max):
        h_next = (2.0 * l + 1.0) / x * h_cur - h_prev
        mag = abs(h_next)
        if mag > _RESCALE:
            h_next /= mag
            h_cur /= mag
            sigma += math.log(mag)
            mag = 1.0
        vals[l + 1] = h_next / mag
        exps[l + 1] = sigma + math.log(mag)
        h_prev = h_cur
        h_cur = h_next
    return vals, exps


def psi_logderiv(l_keep, y):
    """Logarithmic derivative D_l = psi_l'(y)/psi_l(y) of the Riccati-Bessel
    function psi_l = y j_l, for l = 0..l_keep, by downward recurrence."""
    ay = abs(y)
    n_start = (l_keep if l_keep > int(ay) else int(ay)) + 16 + int(
        math.ceil(7.0 * ay ** (1.0 / 3.0))
    )
    d = np.zeros(l_keep + 1, dtype=np.complex128)
    d_cur = 0.0 + 0.0j
    for n in range(n_start, 0, -1):
        r = n / y
        d_prev = r - 1.0 / (d_cur + r)
        if n - 1 <= l_keep:
            d[n - 1] = d_prev
        d_cur = d_prev
    return d


def angular_dyad_per_l(l_max, ct1, st1, ct2, st2, dphi, sm, sn_aa, sn_ab, sn_ba, sn_bb):
    """Per-order m-summed wave dyads between two directions, in the local
    spherical bases (r, theta, phi) x (r', theta', phi').

    Parameters
    ----------
    sm, sn_aa, sn_ab, sn_ba, sn_bb : complex arrays, index l
        Combined radial/scattering scalars: ``sm`` multiplies the magnetic
        angular dyad; the four ``sn_*`` multiply the electric dyad blocks built
        from the radial (a) and tangential (b) electric radial factors of each
        point.

    Returns
    -------
    out : complex array (l_max + 1, 3, 3)
        Contribution of each l (entry 0 unused); basis order (r, theta, phi).
    """
    out = np.zeros((l_max + 1, 3, 3), dtype=np.complex128)

    cosd = np.empty(l_max + 1)
    sind = np.empty(l_max + 1)
    for m in range(l_max + 1):
        cosd[m] = math.cos(m * dphi)
        sind[m] = math.sin(m * dphi)

    n_buf = l_max + 2
    p1a = np.zeros(n_buf)
    p1b = np.zeros(n_buf)
    p1c = np.zeros(n_buf)
    q1a = np.zeros(n_buf)
    q1b = np.zeros(n_buf)
    q1c = np.zeros(n_buf)
    t1 = np.zeros(n_buf)
    p2a = np.zeros(n_buf)
    p2b = np.zeros(n_buf)
    p2c = np.zeros(n_buf)
    q2a = np.zeros(n_buf)
    q2b = np.zeros(n_buf)
    q2c = np.zeros(n_buf)
    t2 = np.zeros(n_buf)

    # degree-0 rows
    p1a[0] = _INV_SQRT_4PI
    p2a[0] = _INV_SQRT_4PI

    # on the polar axis every m >= 2 term is an exact zero (the diagonal seeds
    # carry sin(theta)^m); restricting the loops there changes no bits
    on_axis = st1 == 0.0 and st2 == 0.0

    for l in range(1, l_max + 1):
        fl = float(l)
        row_hi = l if not on_axis else min(l, 3)
        tau_hi = l if not on_axis else 1
        sum_hi = l if not on_axis else 1
        # three-term upward recurrence in l for m <= l-1 (normalized Legendre
        # and its pole-safe m/sin(theta) companion follow the same recurrence)
        for m in range(row_hi):
            fm = float(m)
            c1 = math.sqrt((4.0 * fl * fl - 1.0) / (fl * fl - fm * fm))
            if m <= l - 2:
                c2 = math.sqrt(
                    ((fl - 1.0) * (fl - 1.0) - fm * fm)
                    / (4.0 * (fl - 1.0) * (fl - 1.0) - 1.0)
                )
            else:
                c2 = 0.0
            p1c[m] = c1 * (ct1 * p1a[m] - c2 * p1b[m])
            q1c[m] = c1 * (ct1 * q1a[m] - c2 * q1b[m])
            p2c[m] = c1 * (ct2 * p2a[m] - c2 * p2b[m])
            q2c[m] = c1 * (ct2 * q2a[m] - c2 * q2b[m])
        # diagonal entries
        dl = math.sqrt((2.0 * fl + 1.0) / (2.0 * fl))
        p1c[l] = -dl * st1 * p1a[l - 1]
        q1c[l] = -fl * dl * p1a[l - 1]
        p2c[l] = -dl * st2 * p2a[l - 1]
        q2c[l] = -fl * dl * p2a[l - 1]
        p1c[l + 1] = 0.0
        q1c[l + 1] = 0.0
        p2c[l + 1] = 0.0
        q2c[l + 1] = 0.0

        # theta derivative from the ladder identity
        t1[0] = math.sqrt(fl * (fl + 1.0)) * p1c[1]
        t2[0] = math.sqrt(fl * (fl + 1.0)) * p2c[1]
        for m in range(1, tau_hi + 1):
            fm = float(m)
            cp = math.sqrt((fl - fm) * (fl + fm + 1.0))
            cm = math.sqrt((fl + fm) * (fl - fm + 1.0))
            t1[m] = 0.5 * (cp * p1c[m + 1] - cm * p1c[m - 1])
            t2[m] = 0.5 * (cp * p2c[m + 1] - cm * p2c[m - 1])

        # m-sums (negative m folded in analytically)
        u_pp = p1c[0] * p2c[0]
        u_pt = p1c[0] * t2[0]
        u_tp = t1[0] * p2c[0]
        u_tt = t1[0] * t2[0]
        u_qq = 0.0
        v_qt = 0.0
        v_tq = 0.0
        v_pq = 0.0
        v_qp = 0.0
        for m in range(1, sum_hi + 1):
            tc = 2.0 * cosd[m]
            ts = 2.0 * sind[m]
            u_pp += tc * p1c[m] * p2c[m]
            u_pt += tc * p1c[m] * t2[m]
            u_tp += tc * t1[m] * p2c[m]
            u_tt += tc * t1[m] * t2[m]
            u_qq += tc * q1c[m] * q2c[m]
            v_qt += ts * q1c[m] * t2[m]
            v_tq += ts * t1[m] * q2c[m]
            v_pq += ts * p1c[m] * q2c[m]
            v_qp += ts * q1c[m] * p2c[m]

        out[l, 0, 0] = sn_aa[l] * u_pp
        out[l, 0, 1] = sn_ab[l] * u_pt
        out[l, 0, 2] = sn_ab[l] * v_pq
        out[l, 1, 0] = sn_ba[l] * u_tp
        out[l, 1, 1] = sm[l] * u_qq + sn_bb[l] * u_tt
        out[l, 1, 2] = sm[l] * v_qt + sn_bb[l] * v_tq
        out[l, 2, 0] = -sn_ba[l] * v_qp
        out[l, 2, 1] = -sm[l] * v_tq - sn_bb[l] * v_qt
        out[l, 2, 2] = sm[l] * u_tt + sn_bb[l] * u_qq

        # rotate rows: (l-1, l-2) <- (l, l-1)
        tmp = p1b
        p1b = p1a
        p1a = p1c
        p1c = tmp
        tmp = q1b
        q1b = q1a
        q1a = q1c
        q1c = tmp
        tmp = p2b
        p2b = p2a
        p2a = p2c
        p2c = tmp
        tmp = q2b
        q2b = q2a
        q2a = q2c
        q2c = tmp

    return out

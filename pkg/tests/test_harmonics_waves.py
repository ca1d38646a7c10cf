"""Spherical harmonics with pole-safe companions, and the vector wave
functions, anchored by the free-space partial-wave identity."""

import numpy as np
import pytest
from scipy.special import lpmv

from pointheat.errors import DomainError, SingularityError
from pointheat.greens.free import g0, im_g0_trace
from pointheat.specfun import plane_wave, sph_harmonic, spherical_wave


def lpmv_harmonic(l, m, theta, phi):
    """Independent route: scipy Legendre table + explicit normalization."""
    from math import factorial
    norm = np.sqrt((2 * l + 1) / (4 * np.pi) * factorial(l - m) / factorial(l + m))
    return norm * lpmv(m, l, np.cos(theta)) * np.exp(1j * m * phi)


def test_constant_harmonic():
    y, _, _ = sph_harmonic(0, 0, 0.7, 1.3)
    assert y == pytest.approx(0.2820947917738781, rel=1e-12)


def test_y10_on_axis():
    y, _, _ = sph_harmonic(1, 0, 0.0, 0.0)
    assert y.real == pytest.approx(np.sqrt(3 / (4 * np.pi)), rel=1e-12)


def test_y32_vs_legendre_recurrence_oracle():
    y, dy, qy = sph_harmonic(3, 2, 1.0, 0.5)
    ref = lpmv_harmonic(3, 2, 1.0, 0.5)
    assert y == pytest.approx(ref, rel=1e-12)
    e = 1e-6
    dref = (lpmv_harmonic(3, 2, 1.0 + e, 0.5) - lpmv_harmonic(3, 2, 1.0 - e, 0.5)) / (2 * e)
    assert dy == pytest.approx(dref, rel=1e-8)
    assert qy == pytest.approx(2 / np.sin(1.0) * ref, rel=1e-12)


@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_negative_m_symmetry(m):
    y, dy, qy = sph_harmonic(5, m, 0.9, 0.4)
    ref = lpmv_harmonic(5, m, 0.9, 0.4)
    assert y == pytest.approx(ref, rel=1e-12)


def test_pole_safety():
    for theta in (0.0, np.pi):
        for l in (1, 7, 200):
            for m in (0, 1, -1, min(l, 5)):
                vals = sph_harmonic(l, m, theta, 0.3)
                assert all(np.isfinite(abs(v)) for v in vals)


def test_m_out_of_range():
    with pytest.raises(DomainError):
        sph_harmonic(2, 3, 0.5, 0.0)


def test_m_wave_vanishes_on_axis_for_m0():
    # both angular factors of the magnetic wave vanish at theta = 0 for m = 0
    for l in (1, 2, 6):
        vec = spherical_wave("M", l, 0, "reg", 2e6, (0.0, 0.0, 1e-6))
        assert np.max(np.abs(vec)) == 0.0


def test_outgoing_wave_at_origin_raises():
    with pytest.raises(SingularityError):
        spherical_wave("M", 1, 0, "out", 1e6, (0.0, 0.0, 0.0))


def test_partial_wave_completeness():
    """Sum over regular-wave dyads reproduces Im G0 entrywise."""
    k = 2.0e6
    r1 = np.array([0.3e-6, -0.2e-6, 0.8e-6])
    r2 = np.array([-0.5e-6, 0.4e-6, -0.1e-6])
    l_need = int(np.e * k * max(np.linalg.norm(r1), np.linalg.norm(r2)) / 2) + 20
    total = np.zeros((3, 3), dtype=complex)
    for l in range(1, l_need + 1):
        for m in range(-l, l + 1):
            for pol in ("M", "N"):
                e1 = spherical_wave(pol, l, m, "reg", k, r1)
                e2 = spherical_wave(pol, l, -m, "reg", k, r2)
                total += np.outer(e1, e2)
    ref = g0(r1, r2, k).imag
    scale = im_g0_trace(k)
    assert np.max(np.abs(total.real - ref)) < 1e-10 * scale
    assert np.max(np.abs(total.imag)) < 1e-10 * scale


def test_n_wave_small_argument_form():
    """l=1 electric wave against its explicit small-argument limit."""
    k, r = 1.0e6, 1e-11  # kr = 1e-5
    for m in (-1, 0, 1):
        for direction in ((0.0, 0.0, 1.0), (0.6, -0.3, 0.4)):
            pos = np.multiply(direction, r) / np.linalg.norm(direction)
            got = spherical_wave("N", 1, m, "reg", k, pos)
            y, dy, qy = _angular_triplet(1, m, pos)
            rhat, that, phat = _basis(pos)
            pref = np.sqrt(complex((-1) ** m * k)) * np.sqrt(2.0) / 3.0
            ref = pref * (rhat * y + that * dy + phat * 1j * qy)
            # next-order radial corrections enter at O((kr)^2)
            scale = np.max(np.abs(ref))
            assert np.allclose(got, ref, rtol=1e-7, atol=1e-8 * scale)


def _basis(pos):
    x, y, z = pos
    rho = np.hypot(x, y)
    theta = np.arctan2(rho, z)
    phi = np.arctan2(y, x)
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    return (np.array([st * cp, st * sp, ct]), np.array([ct * cp, ct * sp, -st]),
            np.array([-sp, cp, 0.0]))


def _angular_triplet(l, m, pos):
    x, y, z = pos
    theta = np.arctan2(np.hypot(x, y), z)
    phi = np.arctan2(y, x)
    return sph_harmonic(l, m, theta, phi)


def test_plane_wave_m_polarization():
    k = 2e6
    vec = plane_wave("M", (0.5 * k, 0.0), k, (0.0, 0.0), 0.0)
    assert vec[0] == 0.0 and vec[2] == 0.0
    assert vec[1].real < 0.0  # proportional to -y for k_perp along x


def test_plane_wave_n_grazing_limit():
    k = 2e6
    vec = plane_wave("N+", (k * (1 - 1e-12), 0.0), k, (0.0, 0.0), 0.0)
    assert abs(vec[2] - (1 - 1e-12)) < 1e-5
    assert abs(vec[0]) < 1e-5 and abs(vec[1]) < 1e-5


def test_plane_wave_transversality():
    rng = np.random.default_rng(3)
    k = 1.7e6
    for _ in range(20):
        kp = rng.uniform(0.05, 2.0, size=2) * k
        z = rng.uniform(-1e-6, 1e-6)
        kz = np.sqrt(complex(k * k - kp @ kp))
        if kz.imag < 0:
            kz = -kz
        m = plane_wave("M", kp, k, (0.0, 0.0), z)
        k_up = np.array([kp[0], kp[1], kz])
        k_dn = np.array([kp[0], kp[1], -kz])
        assert abs(k_up @ m) < 1e-9 * k * np.max(np.abs(m))
        n_plus = plane_wave("N+", kp, k, (0.0, 0.0), z)
        n_minus = plane_wave("N-", kp, k, (0.0, 0.0), z)
        scale = k * max(np.max(np.abs(n_plus)), 1e-300)
        assert abs(k_dn @ n_plus) < 1e-9 * scale
        assert abs(k_up @ n_minus) < 1e-9 * scale


def test_plane_wave_zero_kperp_rejected():
    with pytest.raises(DomainError):
        plane_wave("M", (0.0, 0.0), 1e6, (0.0, 0.0), 0.0)

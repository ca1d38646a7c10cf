"""Closed-form free-space Green's function and its analytic traces."""

import numpy as np
import pytest

from pointheat.errors import CoincidentPointError
from pointheat.greens import abs_sq_g0_sum, g0, im_g0_trace


@pytest.mark.parametrize("kd", [0.1, 1.0, 10.0])
def test_abs_sq_identity(kd):
    k = 1.3e6
    d = kd / k
    r1 = np.zeros(3)
    r2 = np.array([0.3, -0.2, 0.5])
    r2 *= d / np.linalg.norm(r2)
    got = np.sum(np.abs(g0(r2, r1, k)) ** 2)
    ref = (1.0 + kd**-2 + 3.0 * kd**-4) / (8 * np.pi**2 * d * d)
    assert got == pytest.approx(ref, rel=1e-12)
    assert abs_sq_g0_sum(d, k) == pytest.approx(ref, rel=1e-15)


def test_reciprocity_exact():
    k = 2e6
    r1 = np.array([1e-7, 2e-7, -3e-7])
    r2 = np.array([-2e-7, 4e-8, 6e-7])
    assert np.array_equal(g0(r1, r2, k), g0(r2, r1, k).T)


def test_far_field_scaling():
    # transverse entries fall off as e^{ikd} / (4 pi d)
    k = 1e6
    for kd in (1e3,):
        d1, d2 = kd / k, 2 * kd / k
        g1 = g0((0, 0, d1), (0, 0, 0), k)[0, 0]
        g2 = g0((0, 0, d2), (0, 0, 0), k)[0, 0]
        ratio = abs(g2 / g1)
        assert ratio == pytest.approx(d1 / d2, rel=1e-5)


def test_im_trace_analytic():
    assert im_g0_trace(2 * np.pi) == pytest.approx(1.0, rel=1e-15)


def test_im_trace_vs_richardson_extrapolation():
    k = 1e6
    ds = np.array([1e-4, 5e-5, 2.5e-5]) / k

    def tr(d):
        return np.trace(g0((0, 0, d), (0, 0, 0), k)).imag

    f0, f1, f2 = tr(ds[0]), tr(ds[1]), tr(ds[2])
    r1 = (4 * f1 - f0) / 3
    r2 = (4 * f2 - f1) / 3
    rr = (16 * r2 - r1) / 15
    # the numerical trace loses ~8 digits to cancellation at kd ~ 1e-4, which
    # caps the accuracy of this extrapolation oracle
    assert rr == pytest.approx(im_g0_trace(k), rel=5e-7)


def test_coincident_point_error():
    with pytest.raises(CoincidentPointError):
        g0((1e-6, 0, 0), (1e-6, 0, 0), 1e6)

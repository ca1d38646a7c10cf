"""Spherical Bessel/Hankel functions: closed forms, independent oracles,
stability identities."""

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointheat.errors import DomainError, RangeError
from pointheat.specfun import (
    riccati_deriv,
    sph_bessel_j,
    sph_h1n_scaled,
    sph_hankel1,
    sph_jn_scaled,
)

mp.mp.dps = 30


def j_series(l, z, terms=80):
    """Defining power series of j_l, summed in arbitrary precision."""
    z = mp.mpc(z)
    total = mp.mpc(0)
    for k in range(terms):
        total += (-z * z / 2) ** k / (mp.factorial(k) * mp.fac2(2 * l + 2 * k + 1))
    return complex(total * z**l)


def test_j0_closed_form():
    assert sph_bessel_j(0, 1.0) == pytest.approx(0.8414709848078965, rel=1e-12)


def test_j1_small_argument_leading_order():
    # j_l ~ z^l / (2l+1)!! for small arguments
    val = sph_bessel_j(1, 0.001)
    assert val.real == pytest.approx(0.001 / 3.0, rel=1e-6)
    assert abs(val.imag) == 0.0


def test_j5_complex_vs_series_oracle():
    got = sph_bessel_j(5, 2.0 + 0.5j)
    frozen = 0.0012755268915548847 + 0.0028231928670882461j  # j_series(5, 2+0.5j)
    assert got == pytest.approx(frozen, rel=1e-13)
    assert got == pytest.approx(j_series(5, 2.0 + 0.5j), rel=1e-13)


@pytest.mark.parametrize("l,z", [(0, 37.6), (12, 0.07), (200, 3.0), (60, 10.0),
                                 (35, 7.0 + 7.0j), (9, 0.4 - 2.2j)])
def test_j_against_series(l, z):
    ref = j_series(l, z, terms=120)
    if ref == 0.0:
        return
    got = sph_bessel_j(l, z)
    scale = abs(ref) if abs(ref) > 0 else 1.0
    assert abs(got - ref) / scale < 1e-12


def _wronskian_residual(l, x):
    """|j_l y_l' - j_l' y_l - 1/x^2| * x^2, assembled in scaled space so the
    identity is checkable even where j underflows and y overflows doubles."""
    vj, ej = sph_jn_scaled(l, complex(x))
    vh, eh = sph_h1n_scaled(l, x)
    j = vj[l].real
    jm = vj[l - 1].real * np.exp(ej[l - 1] - ej[l])
    y = vh[l].imag
    ym = vh[l - 1].imag * np.exp(eh[l - 1] - eh[l])
    jp = jm - (l + 1) / x * j      # carries exponent ej[l]
    yp = ym - (l + 1) / x * y      # carries exponent eh[l]
    w = (j * yp - jp * y) * np.exp(ej[l] + eh[l])
    return abs(w * x * x - 1.0)


def test_wronskian_at_60_10():
    assert _wronskian_residual(60, 10.0) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 200), st.floats(0.1, 100.0))
def test_wronskian_property(l, x):
    assert _wronskian_residual(l, x) < 1e-12


@pytest.mark.parametrize("l,x", [(3, 0.5), (25, 12.0), (120, 40.0), (7, 90.0)])
def test_recurrence_consistency(l, x):
    # (2l+1) f_l / z = f_{l-1} + f_{l+1} for both kinds
    for f in (lambda n: sph_bessel_j(n, x), lambda n: sph_hankel1(n, x)):
        lhs = (2 * l + 1) * f(l) / x
        rhs = f(l - 1) + f(l + 1)
        assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs))


def test_hankel_closed_forms():
    assert sph_hankel1(0, 1.0) == pytest.approx(0.8414709848078965 - 0.5403023058681398j,
                                                rel=1e-12)
    assert sph_hankel1(1, 1.0) == pytest.approx(0.30116867893975674 - 1.3817732906760363j,
                                                rel=1e-12)


def test_hankel_scaled_magnitude_against_mpmath():
    vals, exps = sph_h1n_scaled(2000, 1.0)
    ref = mp.sqrt(mp.pi / 2) * (mp.besselj(mp.mpf(2000.5), 1) + 1j * mp.bessely(mp.mpf(2000.5), 1))
    assert exps[2000] == pytest.approx(float(mp.log(abs(ref))), rel=1e-12)
    assert complex(vals[2000]) == pytest.approx(complex(ref / abs(ref)), abs=1e-13)


def test_deep_scaled_j_magnitude():
    vals, exps = sph_jn_scaled(4000, complex(3000.0))
    ref = mp.sqrt(mp.pi / 6000) * mp.besselj(mp.mpf(4000.5), 3000, maxterms=10**6)
    assert exps[4000] == pytest.approx(float(mp.log(abs(ref))), abs=1e-10)


def test_riccati_small_argument():
    # x j_1 ~ x^2/3, so d/dx[x j_1] ~ 2x/3
    assert riccati_deriv("j", 1, 0.001).real == pytest.approx(2 * 0.001 / 3, rel=1e-5)


def test_riccati_j0_is_cos():
    for x in (0.3, 2.0, 17.5):
        assert riccati_deriv("j", 0, x).real == pytest.approx(np.cos(x), rel=1e-12)


def test_riccati_h_vs_finite_difference():
    x, l, e = 5.0, 3, 1e-6
    fd = (x + e) * sph_hankel1(l, x + e) - (x - e) * sph_hankel1(l, x - e)
    fd /= 2 * e
    got = riccati_deriv("h", l, x)
    assert abs(got - fd) / abs(fd) < 1e-7


def test_domain_and_range_errors():
    with pytest.raises(DomainError):
        sph_bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        sph_bessel_j(10_001, 1.0)
    with pytest.raises(DomainError):
        sph_bessel_j(2, complex(np.inf))
    with pytest.raises(DomainError):
        sph_hankel1(3, 0.0)
    with pytest.raises(DomainError):
        sph_hankel1(3, -2.0)
    with pytest.raises(RangeError):
        sph_hankel1(500, 0.1)  # overflows; scaled form required
    # the scaled interface covers the same order happily
    vals, exps = sph_h1n_scaled(500, 0.1)
    assert np.isfinite(exps[500])
    with pytest.raises(RangeError):
        sph_bessel_j(0, 1.0 + 1000.0j)  # e^{|Im z|} above double range

"""Transport formulas: spectral kernels, integrated powers, derived quantities."""

import numpy as np
import pytest

from pointheat.constants import C, HBAR, KB
from pointheat.errors import UnsupportedQueryError
from pointheat.greens import MirrorCavity, Plate, PointSphere, Sphere, Vacuum
from pointheat.materials import GOLD, SIC, DielectricModel, ParticleSpec
from pointheat.transport import (
    DipoleValidityWarning,
    QuadratureConfig,
    convergence_study,
    hr,
    hr_isolated_sphere,
    hr_kernel,
    hr_mirror_plate,
    hr_vacuum,
    ht,
    ht_kernel,
    ht_vacuum,
    net_ht,
    total_absorption,
)

T0 = 300.0
MIRROR = DielectricModel.mirror()


def sic_pair(d, radius=1e-9, t1=T0, t2=T0):
    p1 = ParticleSpec(SIC, radius, (0.0, 0.0, -d / 2), t1)
    p2 = ParticleSpec(SIC, radius, (0.0, 0.0, d / 2), t2)
    return p1, p2


def bose(w, t):
    return 1.0 / np.expm1(HBAR * w / (KB * t))


def test_hr_kernel_matches_closed_integrand():
    """Vacuum kernel equals the explicit omega^4 spectral density pointwise."""
    p = ParticleSpec(SIC, 1e-8, (0, 0, 0), T0)
    for w in np.geomspace(1e13, 8e14, 25):
        ref = 4 * HBAR / (np.pi * C**3) * w**4 * bose(w, T0) * p.alpha(w).imag
        assert hr_kernel(w, p) == pytest.approx(ref, rel=1e-12)


def test_ht_kernel_matches_closed_integrand():
    d = 2.2e-6
    p1, p2 = sic_pair(d)
    for w in np.geomspace(1e13, 8e14, 25):
        a = p1.alpha(w).imag
        bracket = 1 / d**2 + C**2 / (w**2 * d**4) + 3 * C**4 / (w**4 * d**6)
        ref = 4 * HBAR / (np.pi * C**4) * w**5 * bose(w, T0) * a * a * bracket
        assert ht_kernel(w, p1, p2) == pytest.approx(ref, rel=1e-12)


def test_mirror_plate_kernel_small_distance():
    p = ParticleSpec(SIC, 1e-9, (0, 0, 1e-10), T0)
    w = 2e14
    ratio = hr_kernel(w, p, Plate(MIRROR)) / hr_kernel(w, ParticleSpec(SIC, 1e-9, (0, 0, 0), T0))
    assert ratio == pytest.approx(2 / 3, rel=1e-6)


def test_cavity_kernel_null():
    p = ParticleSpec(SIC, 1e-9, (0, 0, 1.5e-6), T0)
    w = 2e14
    vac = hr_kernel(w, ParticleSpec(SIC, 1e-9, (0, 0, 0), T0))
    assert abs(hr_kernel(w, p, MirrorCavity(6e-6))) < 1e-10 * vac


def test_hr_two_paths_agree():
    p = ParticleSpec(SIC, 1e-8, (0, 0, 0), T0)
    quad = QuadratureConfig(rel_tol=1e-9)
    a = hr(p, Vacuum(), quad=quad)
    b = hr_vacuum(p, quad=quad)
    assert a.power == pytest.approx(b.power, rel=1e-8)
    assert a.normalized == pytest.approx(a.power / p.volume, rel=1e-15)


def test_ht_swap_symmetry():
    p1 = ParticleSpec(SIC, 1e-9, (0.2e-6, -0.1e-6, -1.0e-6), T0)
    p2 = ParticleSpec(SIC, 2e-9, (-0.4e-6, 0.3e-6, 1.1e-6), T0)
    env = Sphere(3e-7, GOLD)
    fwd = ht(p1, p2, env, temperature=T0).power
    rev = ht(p2, p1, env, temperature=T0).power
    # swap leaves |G_ij|^2 invariant by reciprocity; alphas enter symmetrically
    assert fwd == pytest.approx(rev, rel=1e-10)


def test_pp_environment_matches_full_sphere():
    radius, h = 1e-9, 1e-7
    z = radius + h
    p1 = ParticleSpec(SIC, 1e-10, (0, 0, -z), T0)
    p2 = ParticleSpec(SIC, 1e-10, (0, 0, z), T0)
    w = 1.75e14
    full = ht_kernel(w, p1, p2, Sphere(radius, SIC))
    approx = ht_kernel(w, p1, p2, PointSphere(radius, SIC))
    assert full == pytest.approx(approx, rel=0.01)


def test_ht_plate_unsupported():
    p1, p2 = sic_pair(1e-6)
    with pytest.raises(UnsupportedQueryError):
        ht_kernel(2e14, p1, p2, Plate(MIRROR))


def test_mirror_plate_closed_form_limits():
    p = ParticleSpec(SIC, 1e-9, (0, 0, 1.0), T0)
    vac = hr_vacuum(p).power
    far = hr_mirror_plate(p, 1e-3).power
    assert far == pytest.approx(vac, rel=1e-3)
    near = hr_mirror_plate(p, 1e-9).power
    assert near == pytest.approx(2 / 3 * vac, rel=1e-4)


def test_mirror_plate_oscillations_decay():
    p = ParticleSpec(SIC, 1e-9, (0, 0, 1.0), T0)
    vac = hr_vacuum(p).power
    ds = np.geomspace(3e-6, 3e-5, 60)
    ratios = np.array([hr_mirror_plate(p, d).power / vac for d in ds])
    crossings = np.sum(np.diff(np.sign(ratios - 1.0)) != 0)
    assert crossings >= 3  # repeated crossings of the vacuum level
    # excursion amplitude decays with distance
    first = np.max(np.abs(ratios[:20] - 1.0))
    last = np.max(np.abs(ratios[-20:] - 1.0))
    assert last < first


def test_two_path_consistency_suite():
    """Closed-form vs kernel+trace routes on a randomized case suite."""
    rng = np.random.default_rng(5)
    quad = QuadratureConfig(rel_tol=1e-8)
    for _ in range(20):
        d = rng.uniform(3e-7, 5e-6)
        radius = rng.uniform(5e-10, 5e-9)
        t = rng.uniform(150.0, 600.0)
        mat = (SIC, DielectricModel.constant(4 + 0.8j))[rng.integers(0, 2)]
        p1 = ParticleSpec(mat, radius, (0, 0, -d / 2), t)
        p2 = ParticleSpec(mat, radius, (0, 0, d / 2), t)
        a = ht(p1, p2, Vacuum(), quad=quad)
        b = ht_vacuum(p1, p2, quad=quad)
        assert a.power == pytest.approx(b.power, rel=1e-7)
        assert a.power >= 0.0


def test_net_ht_detailed_balance():
    p1, p2 = sic_pair(1e-6, t1=300.0, t2=300.0)
    assert net_ht(p1, p2) == 0.0
    p1, p2 = sic_pair(1e-6, t1=350.0, t2=300.0)
    assert net_ht(p1, p2) > 0.0


def test_total_absorption_global_equilibrium():
    p1, p2 = sic_pair(8e-7, t1=300.0, t2=300.0)
    assert total_absorption([p1, p2], Vacuum(), t_env=300.0) == 0.0
    warm = total_absorption([p1, p2], Vacuum(), t_env=250.0)
    assert warm < 0.0  # particles warmer than surroundings lose heat net


def test_volume_normalization_exactness():
    d = 1.2e-6
    s = 1.7
    p1, p2 = sic_pair(d, radius=1e-9)
    q1, q2 = sic_pair(d, radius=1.7e-9)
    quad = QuadratureConfig(rel_tol=1e-10)
    a = ht_vacuum(p1, p2, quad=quad)
    b = ht_vacuum(q1, q2, quad=quad)
    assert b.power == pytest.approx(a.power * s**6, rel=1e-12)
    assert b.normalized == pytest.approx(a.normalized, rel=1e-12)


def test_isolated_sphere_mirror_emits_nothing():
    radius = 1e-6
    partial = hr_isolated_sphere(radius, MIRROR, T0, 10)
    # lossless scatterer: the emission is zero to machine precision relative
    # to the blackbody bound of the same sphere
    sigma = np.pi**2 * KB**4 / (60 * HBAR**3 * C**2)
    blackbody = 4 * np.pi * radius**2 * sigma * T0**4
    assert np.max(np.abs(partial)) < 1e-12 * blackbody


def test_isolated_sphere_gold_positive_terms():
    partial = hr_isolated_sphere(1e-6, GOLD, T0, 30)
    terms = np.diff(np.concatenate([[0.0], partial[1:]]))
    assert np.all(terms >= 0.0)
    # fast multipole convergence: within 1% far below l = 60
    ratio = partial[1:] / partial[-1]
    enter = 1 + int(np.argmax(np.abs(ratio - 1.0) < 0.01))
    assert enter < 15


def test_convergence_study_l0_is_vacuum():
    radius = 2e-7
    z = radius + 1e-7
    p1 = ParticleSpec(SIC, 1e-9, (0, 0, -z), T0)
    p2 = ParticleSpec(SIC, 1e-9, (0, 0, z), T0)
    pairs, value = convergence_study(p1, p2, Sphere(radius, GOLD), [0, 20, 40],
                                     with_value=True)
    vac = ht_vacuum(p1, p2).power
    l0_value = pairs[0][1] * value
    assert l0_value == pytest.approx(vac, rel=1e-4)


def test_sphere_vanishing_radius_recovers_vacuum():
    radius, h = 1e-9, 1e-7
    z = radius + h
    p1 = ParticleSpec(SIC, 1e-10, (0, 0, -z), T0)
    p2 = ParticleSpec(SIC, 1e-10, (0, 0, z), T0)
    ratio = ht(p1, p2, Sphere(radius, SIC)).power / ht_vacuum(p1, p2).power
    assert abs(ratio - 1.0) < 1e-3


def test_kernel_positivity_random():
    rng = np.random.default_rng(9)
    for _ in range(50):
        d = rng.uniform(2e-7, 4e-6)
        p1, p2 = sic_pair(d, radius=rng.uniform(5e-10, 2e-9))
        w = rng.uniform(3e13, 9e14)
        assert ht_kernel(w, p1, p2) >= 0.0


def test_dipole_validity_warning_surfaces():
    p = ParticleSpec(SIC, 2e-6, (0, 0, 0), T0)  # quarter of the thermal wavelength
    with pytest.warns(DipoleValidityWarning):
        hr_vacuum_power = hr(p, Vacuum(), quad=QuadratureConfig(rel_tol=1e-4)).power
    assert hr_vacuum_power > 0.0

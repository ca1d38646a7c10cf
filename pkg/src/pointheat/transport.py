"""Heat radiation and heat transfer of point particles.

Spectral kernels route through the environment Green's functions; closed-form
vacuum and mirror-plate references provide independent second paths for the
same quantities.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR, KB
from .errors import AccuracyError, DomainError, GeometryError, UnsupportedQueryError
from .greens.cavity import im_g_cavity_trace
from .greens.free import g0, im_g0_trace
from .greens.mie import mie_t_scaled
from .greens.plate import im_g_trace_plate, im_g_trace_plate_mirror
from .greens.pp import g_point_sphere, pp_trace_coincident
from .greens.sphere import g_sphere, scattered_sum, sphere_trace_coincident
from .greens.types import (
    GEOMETRY_MARGIN,
    MirrorCavity,
    MultipoleConfig,
    Plate,
    PointSphere,
    Sphere,
    Vacuum,
)
from .materials import ParticleSpec, dipole_validity, permittivity
from .quadrature import adaptive_integral


@dataclass(frozen=True)
class QuadratureConfig:
    """Frequency-integration policy in the reduced variable x = hbar w / (kB T1)."""

    x_min: float = 1e-4
    x_max: float = 40.0
    rel_tol: float = 1e-6
    refine_windows: tuple = ()   # (omega_lo, omega_hi) pairs forced as panel seeds
    max_panels: int = 4000


@dataclass(frozen=True)
class TransferResult:
    """Integrated power with its normalization and integration diagnostics."""

    power: float            # W
    normalized: float       # W/m^3 (radiation) or W/m^6 (transfer)
    quad_error: float       # absolute error estimate of the power integral, W
    max_l: int = 0          # largest multipole order used across frequencies
    max_tail: float = 0.0   # largest truncation-tail estimate across frequencies
    diagnostics: tuple | None = None


class DipoleValidityWarning(UserWarning):
    pass


def _bose(omega, temperature):
    return 1.0 / np.expm1(HBAR * omega / (KB * temperature))


def _material_windows(*models):
    windows = []
    for model in models:
        if model is not None and model.kind == "sic_lorentz":
            _, w_lo, w_to, _ = model.params
            windows.append((min(w_to, w_lo), max(w_to, w_lo)))
    return tuple(windows)


def _env_material(environment):
    if isinstance(environment, (Sphere, PointSphere, Plate)):
        return environment.material if not environment.material.is_mirror else None
    return None


def _env_distances(environment, position):
    """Distances from a particle position to the environment bodies."""
    pos = np.asarray(position, dtype=float)
    if isinstance(environment, (Sphere, PointSphere)):
        gap = float(np.linalg.norm(pos - np.asarray(environment.center))) - environment.radius
        return (gap,)
    if isinstance(environment, Plate):
        return (pos[2],)
    if isinstance(environment, MirrorCavity):
        return (environment.radius - float(np.linalg.norm(pos - np.asarray(environment.center))),)
    return ()


def _check_geometry(environment, position):
    pos = np.asarray(position, dtype=float)
    if isinstance(environment, (Sphere, PointSphere)):
        rn = float(np.linalg.norm(pos - np.asarray(environment.center)))
        if rn <= environment.radius * (1.0 + GEOMETRY_MARGIN):
            raise GeometryError("particle is not strictly outside the sphere")
    elif isinstance(environment, Plate):
        if pos[2] <= 0.0:
            raise GeometryError("particle must sit at z > 0 above the plate")
    elif isinstance(environment, MirrorCavity):
        rn = float(np.linalg.norm(pos - np.asarray(environment.center)))
        if rn >= environment.radius * (1.0 - GEOMETRY_MARGIN):
            raise GeometryError("particle is not strictly inside the cavity")


def _warn_validity(particle, environment, extra_distances=()):
    distances = tuple(_env_distances(environment, particle.position)) + tuple(extra_distances)
    for check in dipole_validity(particle, distances):
        if check.verdict != "pass":
            warnings.warn(
                f"dipole-limit check {check.name} = {check.ratio:.3g} -> {check.verdict}",
                DipoleValidityWarning, stacklevel=3)


def integrate_spectrum(fn, temperature, quad: QuadratureConfig,
                       capture_nodes: bool = False, abs_tol: float = 0.0):
    """Adaptive integral of fn(omega) over the thermal spectrum at the given
    temperature; fn is vectorized over an omega array."""
    scale = KB * temperature / HBAR
    seeds = {quad.x_min * (quad.x_max / quad.x_min) ** (i / 10.0) for i in range(1, 10)}
    for w_lo, w_hi in quad.refine_windows:
        for f in (0.0, 0.25, 0.5, 0.75, 1.0):
            x = (w_lo + f * (w_hi - w_lo)) / scale
            if quad.x_min < x < quad.x_max:
                seeds.add(x)
    res = adaptive_integral(lambda x: fn(x * scale) * scale,
                            quad.x_min, quad.x_max, quad.rel_tol,
                            seed_points=sorted(seeds), max_panels=quad.max_panels,
                            capture_nodes=capture_nodes, abs_tol=abs_tol)
    if not res.converged:
        raise AccuracyError(
            f"spectral quadrature stalled at {res.n_panels} panels "
            f"(error {res.error:.3g} on value {res.value:.6g})",
            best=res.value, error=res.error)
    return res


def _vec(fn_scalar):
    def wrapped(omegas):
        omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
        return np.array([fn_scalar(w) for w in omegas])
    return wrapped


# --- environment traces ---------------------------------------------------

class _Recorder:
    """Collects multipole diagnostics across frequency samples."""

    def __init__(self):
        self.max_l = 0
        self.max_tail = 0.0
        self.samples = []

    def note(self, omega, value, l_used, tail):
        self.max_l = max(self.max_l, l_used)
        self.max_tail = max(self.max_tail, tail)
        self.samples.append((omega, value, l_used, tail))


def _im_trace_env(omega, position, environment, mp):
    """Sum_i Im G_ii(r1, r1) of the environment, with multipole diagnostics."""
    k = omega / C
    if isinstance(environment, Vacuum):
        return im_g0_trace(k), 0, 0.0
    if isinstance(environment, Plate):
        d = float(position[2])
        if environment.material.is_mirror:
            return im_g_trace_plate_mirror(d, k), 0, 0.0
        eps = permittivity(environment.material, omega)
        return im_g_trace_plate(d, k, eps, environment.mu), 0, 0.0
    if isinstance(environment, MirrorCavity):
        value, l_used, tail = im_g_cavity_trace(position, k, environment, mp)
        return value, l_used, tail
    if isinstance(environment, Sphere):
        tr, l_used, tail = sphere_trace_coincident(k, environment, position, mp)
        return im_g0_trace(k) + tr.imag, l_used, tail
    if isinstance(environment, PointSphere):
        tr = pp_trace_coincident(np.asarray(position, float), k, environment)
        return im_g0_trace(k) + tr.imag, 1, 0.0
    raise UnsupportedQueryError(f"unsupported environment {environment!r}")


def _abs_sq_sum_env(omega, r1, r2, environment, mp):
    """Sum_ij |G_ij(r2, r1)|^2 of the environment, with diagnostics."""
    k = omega / C
    if isinstance(environment, Vacuum):
        g = g0(r2, r1, k)
        return float(np.sum(np.abs(g) ** 2)), 0, 0.0
    if isinstance(environment, Sphere):
        gt = g_sphere(r2, r1, k, environment, mp)
        return float(np.sum(np.abs(gt.matrix) ** 2)), gt.l_max, gt.tail
    if isinstance(environment, PointSphere):
        gt = g_point_sphere(r2, r1, k, environment)
        return float(np.sum(np.abs(gt.matrix) ** 2)), 1, 0.0
    if isinstance(environment, (Plate, MirrorCavity)):
        raise UnsupportedQueryError(
            "two-point Green's functions for plate and cavity environments "
            "are outside this tool's scope")
    raise UnsupportedQueryError(f"unsupported environment {environment!r}")


# --- spectral kernels -------------------------------------------------------

def _hr_kernel_diag(omega, particle, environment, temperature, mp):
    trace, l_used, tail = _im_trace_env(omega, particle.position, environment, mp)
    trace = max(trace, 0.0)  # local density of states; clip float noise
    alpha_im = particle.alpha(omega).imag
    value = (8.0 * HBAR / C**2) * omega**3 * _bose(omega, temperature) * alpha_im * trace
    return value, l_used, tail


def hr_kernel(omega: float, particle: ParticleSpec, environment=Vacuum(),
              temperature: float | None = None, mp: MultipoleConfig | None = None) -> float:
    """Spectral heat-radiation density (W per rad/s) of a particle."""
    t = temperature or particle.temperature
    value, _, _ = _hr_kernel_diag(omega, particle, environment, t, mp)
    return value


def _ht_kernel_diag(omega, p1, p2, environment, temperature, mp):
    r1 = np.asarray(p1.position, dtype=float)
    r2 = np.asarray(p2.position, dtype=float)
    s, l_used, tail = _abs_sq_sum_env(omega, r1, r2, environment, mp)
    a1 = p1.alpha(omega).imag
    a2 = p2.alpha(omega).imag
    value = (32.0 * np.pi * HBAR / C**4) * omega**5 * _bose(omega, temperature) * a1 * a2 * s
    return value, l_used, tail


def ht_kernel(omega: float, p1: ParticleSpec, p2: ParticleSpec, environment=Vacuum(),
              temperature: float | None = None, mp: MultipoleConfig | None = None) -> float:
    """Spectral heat-transfer density (W per rad/s) from particle 1 to particle 2."""
    if tuple(p1.position) == tuple(p2.position):
        raise GeometryError("particles must sit at distinct positions")
    t = temperature or p1.temperature
    value, _, _ = _ht_kernel_diag(omega, p1, p2, environment, t, mp)
    return value


# --- integrated quantities --------------------------------------------------

def _quad_with_windows(quad, *models):
    quad = quad or QuadratureConfig()
    windows = tuple(quad.refine_windows) + _material_windows(*models)
    return QuadratureConfig(quad.x_min, quad.x_max, quad.rel_tol, windows, quad.max_panels)


def hr(particle: ParticleSpec, environment=Vacuum(), temperature: float | None = None,
       quad: QuadratureConfig | None = None, mp: MultipoleConfig | None = None,
       diagnostics: bool = False) -> TransferResult:
    """Heat radiation of a particle in an environment (kernel + trace route)."""
    t = temperature or particle.temperature
    _check_geometry(environment, particle.position)
    _warn_validity(particle, environment)
    quad = _quad_with_windows(quad, particle.material, _env_material(environment))
    rec = _Recorder()
    floor = 0.0
    if not isinstance(environment, Vacuum):
        # null results (mirror cavity) cancel exactly; anchor the error demand
        # to the particle's own free-space emission instead of the cancelled value
        floor = 0.01 * quad.rel_tol * hr_vacuum(particle, t, quad).power

    def f(omega):
        value, l_used, tail = _hr_kernel_diag(omega, particle, environment, t, mp)
        rec.note(omega, value, l_used, tail)
        return value

    res = integrate_spectrum(_vec(f), t, quad, abs_tol=floor)
    return TransferResult(float(res.value), float(res.value) / particle.volume,
                          res.error, rec.max_l, rec.max_tail,
                          tuple(rec.samples) if diagnostics else None)


def ht(p1: ParticleSpec, p2: ParticleSpec, environment=Vacuum(),
       temperature: float | None = None, quad: QuadratureConfig | None = None,
       mp: MultipoleConfig | None = None, diagnostics: bool = False) -> TransferResult:
    """Heat transfer from particle 1 (at its temperature, unless overridden)
    to particle 2, mediated by the environment Green's function."""
    t = temperature or p1.temperature
    r1 = np.asarray(p1.position, float)
    r2 = np.asarray(p2.position, float)
    d12 = float(np.linalg.norm(r2 - r1))
    if d12 == 0.0:
        raise GeometryError("particles must sit at distinct positions")
    for p in (p1, p2):
        _check_geometry(environment, p.position)
        _warn_validity(p, environment, extra_distances=(d12,))
    quad = _quad_with_windows(quad, p1.material, p2.material, _env_material(environment))
    rec = _Recorder()
    floor = 0.0
    if not isinstance(environment, Vacuum):
        floor = 0.01 * quad.rel_tol * ht_vacuum(p1, p2, t, quad).power

    def f(omega):
        value, l_used, tail = _ht_kernel_diag(omega, p1, p2, environment, t, mp)
        rec.note(omega, value, l_used, tail)
        return value

    res = integrate_spectrum(_vec(f), t, quad, abs_tol=floor)
    return TransferResult(float(res.value), float(res.value) / (p1.volume * p2.volume),
                          res.error, rec.max_l, rec.max_tail,
                          tuple(rec.samples) if diagnostics else None)


# --- closed-form reference routes -------------------------------------------

def hr_vacuum(particle: ParticleSpec, temperature: float | None = None,
              quad: QuadratureConfig | None = None) -> TransferResult:
    """Vacuum heat radiation from the closed-form spectral integrand."""
    t = temperature or particle.temperature
    quad = _quad_with_windows(quad, particle.material)

    def f(omega):
        alpha_im = np.array([particle.alpha(w).imag for w in np.atleast_1d(omega)])
        return (4.0 * HBAR / (np.pi * C**3)) * omega**4 * _bose(omega, t) * alpha_im

    res = integrate_spectrum(f, t, quad)
    return TransferResult(float(res.value), float(res.value) / particle.volume, res.error)


def ht_vacuum(p1: ParticleSpec, p2: ParticleSpec, temperature: float | None = None,
              quad: QuadratureConfig | None = None) -> TransferResult:
    """Vacuum heat transfer from the closed-form spectral integrand."""
    t = temperature or p1.temperature
    d = float(np.linalg.norm(np.asarray(p2.position) - np.asarray(p1.position)))
    if d == 0.0:
        raise GeometryError("particles must sit at distinct positions")
    quad = _quad_with_windows(quad, p1.material, p2.material)

    def f(omega):
        omega = np.atleast_1d(omega)
        a1 = np.array([p1.alpha(w).imag for w in omega])
        a2 = np.array([p2.alpha(w).imag for w in omega])
        bracket = 1.0 / d**2 + C**2 / (omega**2 * d**4) + 3.0 * C**4 / (omega**4 * d**6)
        return (4.0 * HBAR / (np.pi * C**4)) * omega**5 * _bose(omega, t) * a1 * a2 * bracket

    res = integrate_spectrum(f, t, quad)
    return TransferResult(float(res.value), float(res.value) / (p1.volume * p2.volume), res.error)


def hr_mirror_plate(particle: ParticleSpec, distance: float,
                    temperature: float | None = None,
                    quad: QuadratureConfig | None = None) -> TransferResult:
    """Heat radiation at a distance above a perfect mirror plate, from the
    explicit closed-form integrand (vacuum part minus interference integral)."""
    if distance <= 0.0:
        raise DomainError("distance must be positive")
    t = temperature or particle.temperature
    quad = _quad_with_windows(quad, particle.material)
    vac = hr_vacuum(particle, t, quad)

    def f(omega):
        omega = np.atleast_1d(omega)
        a1 = np.array([particle.alpha(w).imag for w in omega])
        y = 2.0 * omega / C * distance
        bracket = -np.sin(y) + y * np.cos(y) + 0.5 * y * y * np.sin(y)
        return (HBAR / (np.pi * distance**3)) * omega * _bose(omega, t) * a1 * bracket

    res = integrate_spectrum(f, t, quad)
    power = vac.power - float(res.value)
    return TransferResult(power, power / particle.volume, vac.quad_error + res.error)


def hr_mirror_plate_ratio(particle: ParticleSpec, distances,
                          temperature: float | None = None,
                          quad: QuadratureConfig | None = None) -> np.ndarray:
    """Ratio of mirror-plate heat radiation to the isolated result over a
    distance grid (the vacuum normalization is computed once)."""
    t = temperature or particle.temperature
    quad = _quad_with_windows(quad, particle.material)
    vac = hr_vacuum(particle, t, quad).power
    out = np.empty(len(distances))
    for i, d in enumerate(distances):
        out[i] = hr_mirror_plate(particle, float(d), t, quad).power / vac
    return out


# --- derived quantities -----------------------------------------------------

def net_ht(p1: ParticleSpec, p2: ParticleSpec, environment=Vacuum(),
           quad: QuadratureConfig | None = None,
           mp: MultipoleConfig | None = None) -> float:
    """Net transfer 1 -> 2: the same transfer integral evaluated at both
    temperatures and subtracted, so equal temperatures give an exact zero."""
    fwd = ht(p1, p2, environment, temperature=p1.temperature, quad=quad, mp=mp).power
    rev = ht(p1, p2, environment, temperature=p2.temperature, quad=quad, mp=mp).power
    return fwd - rev


def total_absorption(particles, environment=Vacuum(), t_env: float = 0.0,
                     target: int = 0, quad: QuadratureConfig | None = None,
                     mp: MultipoleConfig | None = None) -> float:
    """Total heat absorbed by the target particle from all particles and the
    environment.  The target's own emission enters with a negative sign; at
    global equilibrium every contribution cancels exactly.
    """
    if t_env <= 0.0:
        raise DomainError("environment temperature must be positive")
    p_t = particles[target]
    total = 0.0
    for i, p in enumerate(particles):
        if i == target:
            emit = hr(p_t, environment, temperature=p_t.temperature, quad=quad, mp=mp).power
            emit_env = hr(p_t, environment, temperature=t_env, quad=quad, mp=mp).power
            total += -(emit - emit_env)
        else:
            gain = ht(p, p_t, environment, temperature=p.temperature, quad=quad, mp=mp).power
            gain_env = ht(p, p_t, environment, temperature=t_env, quad=quad, mp=mp).power
            total += gain - gain_env
    return total


# --- partial-sum studies ----------------------------------------------------

def hr_isolated_sphere(radius: float, material, temperature: float, l_max: int,
                       quad: QuadratureConfig | None = None) -> np.ndarray:
    """Heat radiation of an isolated sphere as partial sums over multipoles.

    Returns the integrated power truncated at each order 1..l_max (index 0
    unused); every per-order term is non-negative for a passive material.
    """
    if l_max < 1:
        raise DomainError("l_max must be >= 1")
    quad = _quad_with_windows(quad, material if not material.is_mirror else None)
    mirror = material.is_mirror

    def per_l_terms(omega):
        k = omega / C
        eps = None if mirror else permittivity(material, omega)
        tm_m, tm_e, tn_m, tn_e = mie_t_scaled(l_max, k, radius, eps=eps, mirror=mirror)
        ls = np.arange(l_max + 1, dtype=float)
        terms = np.zeros(l_max + 1)
        for vals, exps in ((tm_m, tm_e), (tn_m, tn_e)):
            t = vals * np.exp(np.maximum(exps, -745.0))
            t[np.isneginf(exps)] = 0.0
            terms += (2.0 * ls + 1.0) * (t.real + np.abs(t) ** 2)
        return -(2.0 * HBAR / np.pi) * omega * _bose(omega, temperature) * terms

    def f_full(omega):
        omega = np.atleast_1d(omega)
        return np.array([per_l_terms(w).sum() for w in omega])

    # a mirror sphere emits an exact zero; floor the error demand at a tiny
    # fraction of the blackbody bound so the null converges
    sigma_sb = np.pi**2 * KB**4 / (60.0 * HBAR**3 * C**2)
    floor = 0.01 * quad.rel_tol * 4.0 * np.pi * radius**2 * sigma_sb * temperature**4
    res = integrate_spectrum(f_full, temperature, quad, capture_nodes=True,
                             abs_tol=floor)
    scale = KB * temperature / HBAR
    omegas = res.nodes * scale
    weights = res.weights * scale
    table = np.array([per_l_terms(w) for w in omegas])   # (n_nodes, l_max+1)
    return np.cumsum((weights[:, None] * table).sum(axis=0))


def convergence_study(p1: ParticleSpec, p2: ParticleSpec, environment: Sphere,
                      l_grid, temperature: float | None = None,
                      quad: QuadratureConfig | None = None,
                      mp: MultipoleConfig | None = None,
                      with_value: bool = False):
    """Transfer truncated at each multipole order of ``l_grid``, normalized by
    the value at the largest order, on one fixed frequency grid.

    ``with_value=True`` additionally returns the converged power in W."""
    t = temperature or p1.temperature
    l_grid = sorted(int(l) for l in l_grid)
    l_study = max(1, l_grid[-1])
    quad = _quad_with_windows(quad, p1.material, p2.material, _env_material(environment))
    r1 = np.asarray(p1.position, float)
    r2 = np.asarray(p2.position, float)

    def f(omega):
        value, _, _ = _ht_kernel_diag(omega, p1, p2, environment, t, mp)
        return value

    res = integrate_spectrum(_vec(f), t, quad, capture_nodes=True)
    scale = KB * t / HBAR
    omegas = res.nodes * scale
    weights = res.weights * scale

    pref = 32.0 * np.pi * HBAR / C**4
    values = np.zeros(len(l_grid))
    for w, wt in zip(omegas, weights):
        k = w / C
        sc = scattered_sum(k, environment, r2, r1, mp, l_fixed=l_study)
        per_l = sc.per_l_cartesian()
        base = g0(r2, r1, k)
        cums = base[None, :, :] + np.cumsum(per_l, axis=0)
        a1 = p1.alpha(w).imag
        a2 = p2.alpha(w).imag
        factor = pref * w**5 * _bose(w, t) * a1 * a2 * wt
        for i, l in enumerate(l_grid):
            s = float(np.sum(np.abs(cums[l]) ** 2))
            values[i] += factor * s
    pairs = [(l, values[i] / values[-1]) for i, l in enumerate(l_grid)]
    if with_value:
        return pairs, float(values[-1])
    return pairs

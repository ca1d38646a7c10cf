"""Built-in scenario presets reproducing the application figures."""

import numpy as np

from .greens import MultipoleConfig, Sphere
from .materials import GOLD, SIC, DielectricModel, ParticleSpec
from .transport import (
    QuadratureConfig,
    convergence_study,
    hr_isolated_sphere,
    hr_mirror_plate_ratio,
    ht,
    ht_vacuum,
)

GAP = 1e-7          # particle-to-surface distance of the sphere study
T_HOT = 300.0       # emitter temperature
PP_RADIUS = 1e-9    # nominal particle radius; outputs are volume-normalized


def _pair(radius):
    z = radius + GAP
    p1 = ParticleSpec(SIC, PP_RADIUS, (0.0, 0.0, -z), T_HOT)
    p2 = ParticleSpec(SIC, PP_RADIUS, (0.0, 0.0, z), T_HOT)
    return p1, p2


def run_fig_sphere(threads=1, quad=None, mp=None, r_grid=None, progress=None):
    """Transfer between SiC particles across a sphere versus its radius, for
    SiC, gold and mirror sphere materials, with the vacuum baseline.

    Returns (header, rows); values are volume-normalized (W m^-6).
    """
    quad = quad or QuadratureConfig()
    mp = mp or MultipoleConfig(l_cap=9000)
    if r_grid is None:
        r_grid = np.geomspace(1e-9, 3e-5, 60)
    materials = (("sic", SIC), ("gold", GOLD), ("mirror", DielectricModel.mirror()))
    header = ["radius_m", "distance_m", "normalized_vacuum"]
    for name, _ in materials:
        header += [f"normalized_{name}", f"quad_error_{name}", f"max_l_{name}"]
    tasks = [(float(r), quad, mp) for r in r_grid]
    rows = _map_tasks(_sphere_point, tasks, threads, progress)
    return header, rows


def _sphere_point(args):
    radius, quad, mp = args
    p1, p2 = _pair(radius)
    vac = ht_vacuum(p1, p2, quad=quad)
    row = [radius, 2.0 * (radius + GAP), vac.normalized]
    for _, mat in (("sic", SIC), ("gold", GOLD), ("mirror", DielectricModel.mirror())):
        res = ht(p1, p2, Sphere(radius, mat), quad=quad, mp=mp)
        row += [res.normalized, res.quad_error / (p1.volume * p2.volume), res.max_l]
    return row


def run_fig_plate(threads=1, quad=None, d_grid=None, progress=None):
    """Emission of a SiC particle in front of a mirror plate, normalized by
    the isolated emission, versus plate distance."""
    quad = quad or QuadratureConfig()
    if d_grid is None:
        d_grid = np.geomspace(1e-8, 1e-4, 200)
    particle = ParticleSpec(SIC, PP_RADIUS, (0.0, 0.0, 1.0), T_HOT)
    ratios = hr_mirror_plate_ratio(particle, d_grid, quad=quad)
    header = ["distance_m", "hr_over_vacuum"]
    rows = [[float(d), float(r)] for d, r in zip(d_grid, ratios)]
    return header, rows


def run_fig_convergence(threads=1, quad=None, l_grid=None, progress=None):
    """Multipole convergence of the sphere-mediated transfer (gold sphere,
    R = 1e-6 m) against the much faster isolated-sphere emission."""
    quad = quad or QuadratureConfig()
    if l_grid is None:
        l_grid = list(range(2, 122, 2))
    radius = 1e-6
    p1, p2 = _pair(radius)
    pairs = convergence_study(p1, p2, Sphere(radius, GOLD), l_grid, quad=quad)
    iso = hr_isolated_sphere(radius, GOLD, T_HOT, max(l_grid), quad=quad)
    iso_ratio = iso / iso[-1]
    header = ["l_max", "ht_partial_over_converged", "isolated_hr_partial_over_converged"]
    rows = [[l, ratio, float(iso_ratio[min(l, len(iso_ratio) - 1)])]
            for (l, ratio) in pairs]
    return header, rows


def _map_tasks(fn, tasks, threads, progress=None):
    if threads <= 1:
        out = []
        for i, t in enumerate(tasks):
            out.append(fn(t))
            if progress:
                progress(i + 1, len(tasks))
        return out
    import multiprocessing as mp_mod

    with mp_mod.get_context("fork").Pool(threads) as pool:
        return pool.map(fn, tasks)


PRESETS = {
    "fig-sphere": (run_fig_sphere,
                   "transfer between SiC particles across a SiC/gold/mirror sphere "
                   "vs radius (gap 1e-7 m, 300 K), with vacuum baseline"),
    "fig-plate": (run_fig_plate,
                  "SiC particle emission in front of a mirror plate vs distance, "
                  "normalized by the isolated emission"),
    "fig-convergence": (run_fig_convergence,
                        "multipole convergence of sphere-mediated transfer "
                        "(gold sphere R = 1e-6 m) and isolated-sphere emission"),
}

"""Sphere environment: scattered dyadic Green's function by adaptive
partial-wave summation, overflow-safe at high multipole order."""

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..constants import C
from ..errors import ConvergenceError, GeometryError, RangeError
from ..materials import permittivity
from ..specfun import bessel, spherical_basis
from .free import g0
from .mie import mie_t_scaled
from .types import GEOMETRY_MARGIN, GreensTensor, MultipoleConfig, Sphere


def wave_scalars(k: float, x1: float, x2: float, v1, e1, v2, e2, t_m, t_e, phase):
    """Combined per-order scalars feeding the angular dyad kernel.

    For radial functions f at the two points (scaled arrays ``v, e``) and
    scattering multipliers ``t_m * exp(t_e)``, builds
    phase * k/(l(l+1)) * T_l * {f f', a a', a b', b a', b b'} where a and b are
    the radial and tangential electric factors l(l+1) f/x and (x f)'/x.
    """
    n = len(v1)
    ls = np.arange(n, dtype=float)
    ll1 = ls * (ls + 1.0)
    ll1[0] = 1.0
    r1 = bessel.scaled_ratio(v1, e1)
    r2 = bessel.scaled_ratio(v2, e2)
    rr1 = x1 * r1 - ls
    rr2 = x2 * r2 - ls
    a1 = ll1 / x1 * v1
    b1 = rr1 * v1 / x1
    a2 = ll1 / x2 * v2
    b2 = rr2 * v2 / x2

    etot = t_e + e1 + e2
    if np.any(etot[1:] > 700.0):
        raise RangeError("scattered-wave exponent overflow; geometry outside scaled range")
    w = np.exp(np.maximum(etot, -745.0))
    w[~np.isfinite(etot)] = 0.0
    base = phase * k / ll1 * t_m * w
    sm = base * v1 * v2
    sn_aa = base * a1 * a2
    sn_ab = base * a1 * b2
    sn_ba = base * b1 * a2
    sn_bb = base * b1 * b2
    for arr in (sm, sn_aa, sn_ab, sn_ba, sn_bb):
        arr[0] = 0.0
    return sm, sn_aa, sn_ab, sn_ba, sn_bb


@dataclass(frozen=True)
class ScatteredSum:
    """Per-order scattered contributions in the mixed local spherical bases."""

    per_l: np.ndarray      # (l_max + 1, 3, 3), entry 0 zero
    u1: np.ndarray         # columns r̂, θ̂, φ̂ at the first point
    u2: np.ndarray
    l_max: int
    tail: float

    def total(self) -> np.ndarray:
        """Accumulated scattered dyad, Cartesian."""
        return self.u1 @ self.per_l.sum(axis=0) @ self.u2.T

    def per_l_cartesian(self) -> np.ndarray:
        return np.einsum("ab,lbc,dc->lad", self.u1, self.per_l, self.u2)


def _scan_blocks(per_l, mp: MultipoleConfig, l_floor: int, scale: float | None):
    """Find the stopping order under the consecutive-quiet-blocks policy.

    ``scale=None`` measures block contributions against the running Frobenius
    norm of the accumulated sum; a float fixes an absolute scale instead
    (used for null results where the running sum itself cancels).
    """
    n = per_l.shape[0] - 1
    f = np.linalg.norm(per_l.reshape(-1, 9), axis=1)
    f_abs = np.cumsum(f)
    run = np.linalg.norm(np.cumsum(per_l, axis=0).reshape(-1, 9), axis=1)
    quiet = 0
    blocks = []
    lo = 1
    while lo <= n:
        hi = min(lo + mp.block - 1, n)
        bsum = float(np.sum(f[lo : hi + 1]))
        blocks.append(bsum)
        ref = run[hi] if scale is None else scale
        if hi >= l_floor and bsum <= mp.rel_tol * max(ref, 1e-300):
            quiet += 1
            if quiet >= mp.blocks_required:
                q = 0.5
                if len(blocks) >= 2 and blocks[-2] > 0.0:
                    q = max(q, min(blocks[-1] / blocks[-2], 0.95))
                if len(blocks) >= 3 and blocks[-3] > 0.0:
                    q = max(q, min(blocks[-2] / blocks[-3], 0.95))
                tail = sum(blocks[-mp.blocks_required:]) * q / (1.0 - q)
                # the sum cannot be resolved below the roundoff of its own
                # term-by-term accumulation; log-space assembly of the radial
                # scalars costs ~|exponent| ulps per term on top
                tail = max(tail, 4096.0 * np.finfo(float).eps * f_abs[hi])
                return hi, tail
        else:
            quiet = 0
        lo = hi + 1
    return None, None


def scattered_sum(k: float, env: Sphere, r1, r2, mp: MultipoleConfig | None = None,
                  l_fixed: int | None = None) -> ScatteredSum:
    """Adaptive partial-wave sum of the scattered dyad between two exterior points.

    ``l_fixed`` skips adaptivity and sums exactly to the given order
    (convergence studies).
    """
    mp = mp or MultipoleConfig()
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    center = np.asarray(env.center)
    rel1 = r1 - center
    rel2 = r2 - center
    rn1 = float(np.linalg.norm(rel1))
    rn2 = float(np.linalg.norm(rel2))
    for rn in (rn1, rn2):
        if rn <= env.radius * (1.0 + GEOMETRY_MARGIN):
            raise GeometryError(
                f"evaluation point at |r - center| = {rn:.6g} not strictly outside "
                f"the sphere of radius {env.radius:.6g}"
            )
    _, th1, ph1, rh1, tt1, pp1 = spherical_basis(rel1)
    _, th2, ph2, rh2, tt2, pp2 = spherical_basis(rel2)
    u1 = np.column_stack((rh1, tt1, pp1))
    u2 = np.column_stack((rh2, tt2, pp2))
    # cos/sin from the basis vectors: exact zeros on the polar axis
    ct1, st1 = rh1[2], float(np.hypot(rh1[0], rh1[1]))
    ct2, st2 = rh2[2], float(np.hypot(rh2[0], rh2[1]))
    x1, x2 = k * rn1, k * rn2

    mirror = env.material.is_mirror
    eps = None if mirror else permittivity(env.material, C * k)

    def compute(l_hi):
        tm_m, tm_e, tn_m, tn_e = mie_t_scaled(l_hi, k, env.radius, eps=eps,
                                              mu=env.mu, mirror=mirror)
        v1, e1 = bessel.sph_h1n_scaled(l_hi, x1)
        v2, e2 = bessel.sph_h1n_scaled(l_hi, x2)
        sm, *_sn = wave_scalars(k, x1, x2, v1, e1, v2, e2, tm_m, tm_e, 1j)
        _, sn_aa, sn_ab, sn_ba, sn_bb = wave_scalars(
            k, x1, x2, v1, e1, v2, e2, tn_m, tn_e, 1j)
        return kernels.angular_dyad_per_l(
            l_hi, ct1, st1, ct2, st2, ph1 - ph2, sm, sn_aa, sn_ab, sn_ba, sn_bb)

    if l_fixed is not None:
        per_l = compute(l_fixed)
        return ScatteredSum(per_l, u1, u2, l_fixed, 0.0)

    l_floor = max(8, int(np.ceil(k * max(rn1, rn2))))
    l_hi = max(16, int(np.ceil(np.e * k * max(rn1, rn2) / 2.0)) + 24,
               l_floor + mp.block * (mp.blocks_required + 1))
    l_hi = min(l_hi, mp.l_cap)
    while True:
        per_l = compute(l_hi)
        l_stop, tail = _scan_blocks(per_l, mp, l_floor, None)
        if l_stop is not None:
            return ScatteredSum(per_l[: l_stop + 1], u1, u2, l_stop, tail)
        if l_hi >= mp.l_cap:
            partial = ScatteredSum(per_l, u1, u2, l_hi, np.inf)
            raise ConvergenceError(
                f"multipole sum not converged at the order cap {mp.l_cap}",
                partial=partial, l_max=l_hi, tail=np.inf)
        l_hi = min(2 * l_hi, mp.l_cap)


def g_sphere(r, rp, k: float, env: Sphere, mp: MultipoleConfig | None = None) -> GreensTensor:
    """Dyadic Green's function of a sphere environment, both points exterior."""
    sc = scattered_sum(k, env, r, rp, mp)
    return GreensTensor(g0(r, rp, k) + sc.total(), sc.l_max, sc.tail)


def sphere_trace_coincident(k: float, env: Sphere, r1,
                            mp: MultipoleConfig | None = None):
    """Sum_i G_ii(r1, r1) of the scattered part (the free part is analytic).

    Returns (complex trace, l_max, tail); callers take the imaginary part.
    """
    sc = scattered_sum(k, env, r1, r1, mp)
    tr = complex(np.trace(sc.per_l.sum(axis=0)))
    return tr, sc.l_max, sc.tail

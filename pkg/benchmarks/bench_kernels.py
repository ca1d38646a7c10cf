"""Benchmark the numba kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np


def timeit(fn, *args, repeat=5):
    fn(*args)  # warmup / JIT
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def micro_benchmarks():
    from pointheat.kernels import _numba, _numpy

    rng = np.random.default_rng(0)
    print(f"{'kernel':<34} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    print("-" * 66)

    z = 3.0 + 0.5j
    sincos = _numpy.sin_cos_scaled(z)
    for l_max in (256, 2048):
        a = timeit(_numba.jn_down_core, l_max, z, *sincos)
        b = timeit(_numpy.jn_down_core, l_max, z, *sincos)
        print(f"{'jn_down_core  l=' + str(l_max):<34} {a*1e3:9.2f}ms {b*1e3:9.2f}ms {b/a:7.1f}x")

    for l_max in (256, 2048):
        a = timeit(_numba.h1n_up_scaled, l_max, 2.5)
        b = timeit(_numpy.h1n_up_scaled, l_max, 2.5)
        print(f"{'h1n_up_scaled l=' + str(l_max):<34} {a*1e3:9.2f}ms {b*1e3:9.2f}ms {b/a:7.1f}x")

    a = timeit(_numba.psi_logderiv, 2048, 40.0 + 12.0j)
    b = timeit(_numpy.psi_logderiv, 2048, 40.0 + 12.0j)
    print(f"{'psi_logderiv  l=2048':<34} {a*1e3:9.2f}ms {b*1e3:9.2f}ms {b/a:7.1f}x")

    for l_max, axis in ((256, False), (1024, False), (3072, False), (3072, True)):
        arrs = [rng.normal(size=l_max + 1) + 1j * rng.normal(size=l_max + 1)
                for _ in range(5)]
        if axis:
            args = (l_max, 1.0, 0.0, -1.0, 0.0, 0.0)
        else:
            args = (l_max, 0.43, np.sqrt(1 - 0.43**2), -0.2, np.sqrt(0.96), 1.2)
        a = timeit(_numba.angular_dyad_per_l, *args, *arrs)
        b = timeit(_numpy.angular_dyad_per_l, *args, *arrs)
        tag = f"angular_dyad l={l_max}" + (" (axis)" if axis else "")
        print(f"{tag:<34} {a*1e3:9.2f}ms {b*1e3:9.2f}ms {b/a:7.1f}x")


END_TO_END = r"""
import time, warnings
warnings.simplefilter("ignore")
from pointheat import GOLD, SIC, ParticleSpec, Sphere, ht
radius, gap = 1e-6, 1e-7
z = radius + gap
p1 = ParticleSpec(SIC, 1e-9, (0, 0, -z), 300.0)
p2 = ParticleSpec(SIC, 1e-9, (0, 0, z), 300.0)
ht(p1, p2, Sphere(radius, GOLD))  # warmup (JIT, caches)
t0 = time.perf_counter()
res = ht(p1, p2, Sphere(radius, GOLD))
print(f"{time.perf_counter() - t0:.3f}")
"""


def end_to_end():
    print()
    print("end-to-end transfer point (gold sphere R=1e-6, gap 1e-7):")
    times = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, POINTHEAT_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True)
        times[backend] = float(out.stdout.strip().splitlines()[-1])
        print(f"  {backend:<6} {times[backend]:8.3f} s")
    print(f"  speedup {times['numpy'] / times['numba']:.1f}x")


if __name__ == "__main__":
    micro_benchmarks()
    end_to_end()

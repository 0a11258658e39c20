"""Compare the compiled and numpy kernel backends.

Times the three hot kernels on a degree-24 polynomial, then one full swap-loop
track with each backend swapped into the tracker.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from k3mono import kernels
from k3mono.tracker import track_loop
from k3mono.weierstrass import default_construction_i, swap_loop


def kernel_cases(mod, rng):
    roots = np.exp(2j * np.pi * rng.uniform(size=24)) * rng.uniform(0.3, 1.0, size=24)
    c = mod.poly_from_roots(roots)
    z0 = 1.5 * np.exp(2j * np.pi * (np.arange(24) + 0.3) / 24)
    near = roots + 1e-3
    trust = np.full(24, 1e-2)
    return {
        "horner (24 points)": lambda: mod.horner(c, z0),
        "aberth (degree 24)": lambda: mod.aberth(c, z0, 1000, 1e-14),
        "newton_batch (24 roots)": lambda: mod.newton_batch(c, near, trust, 12, 1e-13),
        "min_pairwise_distance": lambda: mod.min_pairwise_distance(roots),
    }


def track_case(mod, loop):
    def run():
        saved = {name: getattr(kernels, name) for name in ("horner", "newton_batch", "min_pairwise_distance", "aberth", "nearest_distances")}
        try:
            for name in saved:
                setattr(kernels, name, getattr(mod, name))
            return track_loop(loop)
        finally:
            for name, fn in saved.items():
                setattr(kernels, name, fn)

    return run


def best_time(fn, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = {"python": kernels.load_backend("python")}
    try:
        backends["compiled"] = kernels.load_backend("compiled")
    except ImportError:
        print("compiled backend not built; timing the numpy fallback only")

    loop = swap_loop(default_construction_i(np.random.default_rng(0)), 0, 1)
    rows = {}
    for name, mod in backends.items():
        cases = kernel_cases(mod, np.random.default_rng(1))
        cases["track one swap loop"] = track_case(mod, loop)
        for label, fn in cases.items():
            rows.setdefault(label, {})[name] = best_time(fn, args.repeat)

    header = f"{'kernel':<26}" + "".join(f"{n:>14}" for n in backends) + ("     speedup" if len(backends) == 2 else "")
    print(header)
    for label, times in rows.items():
        line = f"{label:<26}" + "".join(f"{times[n] * 1e3:>11.3f} ms" for n in backends)
        if len(backends) == 2:
            line += f"{times['python'] / times['compiled']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()

"""Time the numba and numpy paths of each hot kernel.

    python3 benchmarks/bench_kernels.py [--size N] [--steps N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from nncalc import _kernels


def best_of(fn, repeat):
    fn()  # warm-up (includes JIT compilation)
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    x = np.random.default_rng(0).uniform(-10, 10, args.size)
    y = _kernels.spin_forward_numpy(x)
    cases = {
        "spin_forward": (lambda: _kernels.spin_forward_numpy(x),
                         lambda: _kernels.spin_forward_numba(x)),
        "spin_inverse": (lambda: _kernels.spin_inverse_numpy(y),
                         lambda: _kernels.spin_inverse_numba(y)),
        "rk4_sqrt": (lambda: _kernels.rk4_sqrt_numpy(0.05, 0.1, 5.0, args.steps, 0.3),
                     lambda: _kernels.rk4_sqrt_numba(0.05, 0.1, 5.0, args.steps, 0.3)),
    }
    print(f"{'kernel':<14}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, (np_fn, nb_fn) in cases.items():
        t_np = best_of(np_fn, args.repeat)
        if not _kernels.HAS_NUMBA:
            print(f"{name:<14}{t_np:>12.4g}{'n/a':>12}{'':>10}")
            continue
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{name:<14}{t_np:>12.4g}{t_nb:>12.4g}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()

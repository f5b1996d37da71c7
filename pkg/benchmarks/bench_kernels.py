"""Time each hot kernel under numba and pure numpy.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from matchlet import _kernels


def cases(rng):
    nodes = rng.uniform(-2 * np.pi, 2 * np.pi, 512)
    return {
        "fourier_sum": (nodes, rng.normal(size=512) + 1j * rng.normal(size=512),
                        rng.uniform(-20, 20, 2000)),
        "cos_transform": (np.abs(nodes), rng.normal(size=512), rng.uniform(-20, 20, 2000)),
        "trig_poly": (rng.normal(size=64) + 0j, -10, rng.uniform(0, 2 * np.pi, 20000)),
        "cos_series": (rng.normal(size=1025), 3.0, rng.uniform(-1, 1, 4097)),
        "cos_series_deriv": (rng.normal(size=1025), 3.0, rng.uniform(-1, 1, 4097)),
        "dyadic_coefficients": (rng.normal(size=1025), 1024),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.NUMBA_KERNELS:
        raise SystemExit("numba is not installed; nothing to compare")
    data = cases(np.random.default_rng(0))
    print(f"{'kernel':<22}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}{'max diff':>12}")
    for name, args_ in data.items():
        fn_np, fn_nb = _kernels.NUMPY_KERNELS[name], _kernels.NUMBA_KERNELS[name]
        fn_nb(*args_)  # compile outside the timing
        t_np = min(timeit.repeat(lambda: fn_np(*args_), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: fn_nb(*args_), number=1, repeat=args.repeat))
        diff = float(np.max(np.abs(fn_np(*args_) - fn_nb(*args_))))
        print(f"{name:<22}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{t_np / t_nb:>10.1f}x"
              f"{diff:>12.1e}")


if __name__ == "__main__":
    main()

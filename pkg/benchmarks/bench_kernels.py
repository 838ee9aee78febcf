"""Compare the compiled kernels with the NumPy fallback.

Run ``python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]``. Each
kernel is timed on identical inputs for both backends; the outputs are
checked for agreement before any timing is reported.
"""
import argparse
import timeit

import numpy as np

from cvextremal import _kernels_py
from cvextremal.sampling import SamplerConfig, sample_matrices, sample_standard_forms

try:
    from cvextremal import _kernels
except ImportError:
    _kernels = None


def _cases(n, grid):
    params = sample_standard_forms(SamplerConfig(n, seed=1))
    a, b, cp, cm = params.T
    delta = a * a + b * b + 2.0 * cp * cm
    det = (a * b - cp * cp) * (a * b - cm * cm)
    sigmas = sample_matrices(SamplerConfig(min(n, 20000), seed=2))
    logv = np.linspace(np.log(1e-2), np.log(1e2), grid)
    return {
        "sympeig_batch": (delta, det),
        "two_mode_invariants": (sigmas,),
        "epr_grid_min": (2.0, 3.0, 1.5, -1.2, logv),
    }


def _agree(x, y):
    return all(np.allclose(u, v, rtol=1e-9, atol=1e-9) for u, v in zip(x, y))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--grid", type=int, default=401)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the NumPy fallback is available")
        return
    cases = _cases(args.n, args.grid)
    print(f"{'kernel':<22}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for name, inputs in cases.items():
        f_py, f_cy = getattr(_kernels_py, name), getattr(_kernels, name)
        if not _agree(f_py(*inputs), f_cy(*inputs)):
            raise SystemExit(f"{name}: backends disagree")
        t_py = min(timeit.repeat(lambda: f_py(*inputs), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: f_cy(*inputs), number=1, repeat=args.repeat))
        print(f"{name:<22}{1e3 * t_py:>14.3f}{1e3 * t_cy:>14.3f}{t_py / t_cy:>10.1f}")


if __name__ == "__main__":
    main()

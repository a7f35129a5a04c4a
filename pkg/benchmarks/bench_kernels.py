"""Compare the numba and numpy variants of the hot kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]

Both variants are importable regardless of ``PSTABLE_DISABLE_NUMBA``; the
numba functions are compiled once before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from pstable import _kernels as K


def _cases(n: int, rng: np.random.Generator):
    t = rng.gumbel(1.0, 1.0, n)
    params = np.array([[2.0, 1.0, -0.2], [0.0, 1.0, 0.3]])
    x = np.minimum(3.0 * rng.weibull(3.0, n), 6.0 * rng.weibull(6.0, n))
    u = np.sort(rng.random(n))
    return {
        "loggev_terms": ((t, 2.0, 1.0, -0.2), K.loggev_terms_numpy, K.loggev_terms_numba),
        "acc_pmax_loglik": ((t, params), K.acc_pmax_loglik_numpy, K.acc_pmax_loglik_numba),
        "acc_lmin_loglik": ((x, 0.0, 1.0, 3.0, 1.0, 6.0), K.acc_lmin_loglik_numpy, K.acc_lmin_loglik_numba),
        "gof_stats": ((u, 1.0 - u), K.gof_stats_numpy, K.gof_stats_numba),
    }


def run(n: int = 100_000, repeat: int = 5, seed: int = 0) -> list[tuple[str, float, float]]:
    """Return ``(kernel, numpy_seconds, numba_seconds)`` best-of-``repeat`` timings."""
    rows = []
    for name, (args, f_np, f_nb) in _cases(n, np.random.default_rng(seed)).items():
        f_nb(*args)  # compile
        t_np = min(timeit.repeat(lambda: f_np(*args), number=1, repeat=repeat))
        t_nb = min(timeit.repeat(lambda: f_nb(*args), number=1, repeat=repeat))
        rows.append((name, t_np, t_nb))
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"numba available: {K.HAVE_NUMBA}; active backend: {K.BACKEND}; n = {args.n}")
    print(f"{'kernel':<18} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for name, a, b in run(args.n, args.repeat):
        print(f"{name:<18} {1e3 * a:>12.3f} {1e3 * b:>12.3f} {a / b:>9.1f}")


if __name__ == "__main__":
    main()

"""Benchmark: compiled Jacobi kernel vs pure-Python fallback.

Runs both backends over batches of random Hermitian matrices, reports
per-call time, speedup, agreement between the backends, and deviation from
numpy's LAPACK eigenvalues as an independent reference.

Usage: python benchmarks/bench_eigensolver.py [--repeats N]
"""

import argparse
import time

import numpy as np

from cowit import _jacobi_py
from cowit.backend import eigh_with_kernel

try:
    from cowit import _jacobi

    HAVE_EXT = True
except ImportError:
    HAVE_EXT = False

DIMS = (2, 3, 4, 6, 8, 12, 16)


def batch(rng, dim, count):
    g = rng.standard_normal((count, dim, dim)) + 1j * rng.standard_normal((count, dim, dim))
    return (g + g.conj().transpose(0, 2, 1)) / 2.0


def time_kernel(kernel, mats):
    t0 = time.perf_counter()
    results = [eigh_with_kernel(kernel, a) for a in mats]
    return time.perf_counter() - t0, results


def run(repeats):
    rng = np.random.default_rng(0)
    print(f"compiled extension available: {HAVE_EXT}")
    header = f"{'dim':>4} {'n':>6} {'cython us':>10} {'python us':>10} {'speedup':>8} {'agree':>10} {'vs lapack':>10}"
    print(header)
    print("-" * len(header))
    for dim in DIMS:
        count = max(20, repeats // dim)
        mats = batch(rng, dim, count)
        t_py, res_py = time_kernel(_jacobi_py.jacobi_cycle, mats)
        if HAVE_EXT:
            t_cy, res_cy = time_kernel(_jacobi.jacobi_cycle, mats)
            agree = max(
                max(np.abs(wc - wp).max(), np.abs(vc - vp).max())
                for (wc, vc), (wp, vp) in zip(res_cy, res_py)
            )
            speed = t_py / t_cy
            t_cy_us = t_cy / count * 1e6
        else:
            agree, speed, t_cy_us = float("nan"), float("nan"), float("nan")
            res_cy = res_py
        lapack_dev = max(
            np.abs(w - np.linalg.eigvalsh(a)).max() for (w, _), a in zip(res_cy, mats)
        )
        print(
            f"{dim:>4} {count:>6} {t_cy_us:>10.1f} {t_py / count * 1e6:>10.1f} "
            f"{speed:>8.1f} {agree:>10.2e} {lapack_dev:>10.2e}"
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=2000,
                        help="work budget per dimension (default %(default)s)")
    run(parser.parse_args().repeats)

"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from sl2classes import _kernels
from sl2classes.ids import P_PM, Elliptic, Hyperbolic, class_trace
from sl2classes.matrix_core import canonical_array
from sl2classes.mc_oracle import UGRID


def best_of(fn, args, repeat):
    fn(*args)  # warm-up, includes numba compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def cases(n, rng):
    theta, r, s = rng.uniform(0, 6.3, n), rng.normal(size=n), rng.normal(size=n)
    k = _kernels.np_conjugators(theta, r, s)
    m = _kernels.np_conjugate(k, canonical_array(Elliptic(0.25)))
    w = max(1, n // 50)
    pre = np.broadcast_to(np.eye(2), (w, 2, 2)).copy()
    c = _kernels.np_conjugate(k[:w], canonical_array(Hyperbolic(-2.0)))
    fam = rng.integers(0, 3, w)
    yield "conjugators", (theta, r, s), n
    yield "conjugate", (k, canonical_array(P_PM)), n
    yield "classify", (m, 1e-9), n
    yield "witness_candidates", (pre, canonical_array(Elliptic(0.5)), k[:w], fam, c,
                                 class_trace(Elliptic(0.5)), UGRID, 1e-9, 4), w


_END_TO_END = """
import time
from fractions import Fraction as F
from sl2classes.ids import P_PP, P_PM, Elliptic
from sl2classes.mc_oracle import verify_product
from sl2classes.product_engine import product_n
qs = [[P_PP] * 3, [Elliptic(F(1, 2))] * 2, [Elliptic(F(1, 3)), P_PM, P_PP]]
verify_product(qs[0], product_n(qs[0]), 100)
t = time.perf_counter()
for q in qs:
    verify_product(q, product_n(q), 10**4)
print(time.perf_counter() - t)
"""


def end_to_end(disable: bool) -> float:
    env = dict(os.environ, SL2CLASSES_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", _END_TO_END], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':20s} {'rows':>8s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, fargs, rows in cases(args.n, rng):
        t_np = best_of(_kernels.KERNELS_NUMPY[name], fargs, args.repeat)
        t_nb = best_of(_kernels.KERNELS_NUMBA[name], fargs, args.repeat)
        print(f"{name:20s} {rows:8d} {1e3 * t_np:10.2f} {1e3 * t_nb:10.2f} {t_np / t_nb:8.1f}x")
    t_np, t_nb = end_to_end(True), end_to_end(False)
    print(f"{'verify_product x3':20s} {'':8s} {1e3 * t_np:10.0f} {1e3 * t_nb:10.0f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()

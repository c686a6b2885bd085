"""Time the numba and pure-numpy kernel paths on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from iwasawa import _kernels as K


def _time(fn, args, repeat):
    fn(*args)  # compile / warm caches
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    mod = 3 ** 12
    cases = []
    for n in (16, 64, 256):
        a, b = rng.integers(0, mod, n), rng.integers(0, mod, n)
        cases.append((f"conv_trunc n={n}", "conv_trunc", (a, b, n, mod)))
    for n in (27, 125, 625):
        a, b = rng.integers(0, mod, n), rng.integers(0, mod, n)
        cases.append((f"cyclic_conv n={n}", "cyclic_conv", (a, b, mod)))
    for n in (32, 128, 512):
        num = rng.integers(0, mod, n)
        den = np.append(rng.integers(0, mod, n // 4), 1)
        cases.append((f"divmod_monic n={n}", "divmod_monic", (num, den, mod)))

    print(f"{'kernel':<24}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>10}")
    for label, kernel, inputs in cases:
        t_np = _time(getattr(K, f"{kernel}_numpy"), inputs, args.repeat) * 1e3
        if K.HAS_NUMBA:
            t_nb = _time(getattr(K, f"{kernel}_numba"), inputs, args.repeat) * 1e3
            print(f"{label:<24}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{label:<24}{t_np:>12.3f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()

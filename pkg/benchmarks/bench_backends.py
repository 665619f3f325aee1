"""Time the numba and numpy backends of the two hot kernels.

    python3 benchmarks/bench_backends.py [--repeat 5] [--n 20000]

The minorant series is timed on a real grid, Riemann-Siegel Z on a block of
heights near 5e4 (about 90 Dirichlet terms each).  Results from the two
backends are compared before anything is timed.
"""
import argparse
import time

import numpy as np

from zetabound import _accel
from zetabound.kernels import minorant_series, rs_z


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=20_000)
    args = ap.parse_args(argv)

    x = np.linspace(-50, 50, args.n) + 1e-7
    t = np.linspace(5e4, 5e4 + 100, args.n)
    cases = {
        "minorant_series": lambda b: minorant_series(x, 1.0, 1e-11, backend=b)[0],
        "rs_z": lambda b: rs_z(t, backend=b),
    }
    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    print(f"{'kernel':<16} {'points':>8} " + " ".join(f"{b:>10}" for b in backends) + "   max|diff|")
    for name, fn in cases.items():
        outs = {b: fn(b) for b in backends}  # also compiles the numba version
        diff = max(float(np.max(np.abs(outs[b] - outs["numpy"]))) for b in backends)
        secs = [best_of(lambda: fn(b), args.repeat) for b in backends]
        npts = x.size if name == "minorant_series" else t.size
        print(f"{name:<16} {npts:>8} " + " ".join(f"{s:>9.4f}s" for s in secs) + f"   {diff:.2e}")


if __name__ == "__main__":
    main()

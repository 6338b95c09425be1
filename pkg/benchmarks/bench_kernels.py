"""Compare the compiled and numpy kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--samples 40]

Reports the median wall time of full fits on the demo dataset and on a
larger random instance, per backend, and checks that both backends return
bitwise identical results.
"""
import argparse
import statistics
import time

import numpy as np

from tropfit import MAX_PLUS, MAX_TIMES, SampleSet, fit
from tropfit._backend import available, use_backend
from tropfit.datasets import demo_samples


def _time(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def cases(n_random):
    rng = np.random.default_rng(12345)
    xs = np.sort(rng.choice(np.arange(1, 20 * n_random), n_random, replace=False)) / 10.0
    ys = np.sin(xs) + 0.1 * rng.normal(size=n_random)
    yield "demo max-plus N=5", demo_samples(), 5
    yield "demo max-plus N=2", demo_samples(), 2
    yield "demo max-algebra N=7", demo_samples(tag=MAX_TIMES), 7
    yield f"random M={n_random} N=4", SampleSet(xs, ys, MAX_PLUS), 4


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=40, help="size of the random instance")
    args = ap.parse_args()

    # reference backend first so the speedup column reads "compiled vs numpy"
    backends = sorted(available(), key=lambda b: b != "python")
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':<26}" + "".join(f"{b + ' [ms]':>16}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}{'identical':>11}"
    print(header)
    for label, samples, n in cases(args.samples):
        row, results, times = f"{label:<26}", [], []
        for b in backends:
            with use_backend(b):
                t, r = _time(lambda: fit(samples, n), args.repeat)
            times.append(t)
            results.append(r)
            row += f"{1e3 * t:>16.2f}"
        if len(backends) > 1:
            same = all(
                np.array_equal(results[0].exponents, r.exponents)
                and np.array_equal(results[0].coefficients, r.coefficients)
                and results[0].delta_star == r.delta_star
                for r in results[1:]
            )
            row += f"{times[0] / times[-1]:>9.1f}x{str(same):>11}"
        print(row)


if __name__ == "__main__":
    main()

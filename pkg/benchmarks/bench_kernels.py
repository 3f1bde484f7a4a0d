"""Time the compiled and pure-Python kernels on identical inputs.

    python benchmarks/bench_kernels.py [--batch 20000] [--repeat 3]

Prints one line per (kernel, backend) with the best wall time and the
speed-up of the compiled backend, and checks that both backends agree.
"""
import argparse
import time

import numpy as np

from conjprob.kernels import get_backend


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def feasibility_inputs(rng, batch, n, d):
    radii = rng.uniform(0.5, 1.5, n)
    half = radii[0] + radii[1:]
    centers = np.zeros((batch, n, d))
    centers[:, 1:] = rng.uniform(-1, 1, (batch, n - 1, d)) * half[None, :, None]
    return (centers, radii)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    compiled, python = get_backend("compiled"), get_backend("python")
    cases = []
    for n, d in [(3, 2), (4, 2), (3, 3)]:
        centers, radii = feasibility_inputs(rng, args.batch, n, d)
        cases.append((f"balls_feasible n={n} d={d}", lambda b, c=centers, r=radii: b.balls_feasible(c, r)))
    for n in (1, 3):
        xi = rng.standard_normal((args.batch * 5, n))
        ex = rng.standard_exponential((args.batch * 5, n))
        cases.append((f"pickands_count n={n}", lambda b, x=xi, e=ex: b.pickands_count(x, e, 0.02, 600)))

    print(f"{'kernel':28s} {'compiled [s]':>13s} {'python [s]':>11s} {'speed-up':>9s}  agree")
    for name, call in cases:
        tc, oc = best_of(lambda: call(compiled), args.repeat)
        tp, op = best_of(lambda: call(python), args.repeat)
        agree = np.array_equal(oc, op)
        print(f"{name:28s} {tc:13.4f} {tp:11.4f} {tp / tc:9.1f}  {agree}")


if __name__ == "__main__":
    main()

"""Benchmark: compiled extension vs pure-Python elimination kernels.

Times the raw kernels (Bareiss elimination, exact matrix products, modular
reduction) and one end-to-end law check, on both backends.  Run with

    python benchmarks/bench_kernels.py [--size N] [--repeats R]
"""

import argparse
import random
import subprocess
import sys
import time

from comodcheck import _core_py

try:
    from comodcheck import _core
    BACKENDS = [_core, _core_py]
except ImportError:
    print("compiled backend unavailable; timing the pure backend only")
    BACKENDS = [_core_py]


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(size, repeats):
    rng = random.Random(0)
    n = size
    dense = [rng.randint(-3, 3) for _ in range(n * 2 * n)]
    square = [rng.randint(-3, 3) for _ in range(n * n)]
    sparse = [x if rng.random() < 0.15 else 0 for x in square]
    modm = [x % 10007 for x in dense]
    print(f"kernel workloads at size {n} (best of {repeats}):")
    header = f"{'':>10} {'bareiss':>10} {'mul dense':>10} " \
             f"{'mul sparse':>11} {'rref_mod':>10}"
    print(header)
    for mod in BACKENDS:
        t1 = time_call(lambda: mod.bareiss_echelon(dense, n, 2 * n),
                       repeats)
        t2 = time_call(lambda: mod.mul_obj(square, square, n, n, n),
                       repeats)
        t3 = time_call(lambda: mod.mul_obj(sparse, sparse, n, n, n),
                       repeats)
        t4 = time_call(lambda: mod.rref_mod(modm, n, 2 * n, 10007),
                       repeats)
        print(f"{mod.BACKEND:>10} {t1:10.4f} {t2:10.4f} {t3:11.4f} "
              f"{t4:10.4f}")


LAW_CHECK_SNIPPET = r"""
import time
from comodcheck import dsl, runner
from comodcheck._backend import BACKEND
doc = dsl.parse(
    "field Q\ncoalg C = grouplike {a, b}\n"
    "coalg D = grouplike {x, y, z}\n"
    "morph f : D -> C {x->a, y->a, z->b}\n"
    "check adjunction f\ncheck frobenius f\ncheck ssmc f\n"
    "check hyperdoctrine C 1\n")
t0 = time.perf_counter()
reports = runner.run(doc, seed=0, max_dim=3)
dt = time.perf_counter() - t0
status = "ok" if all(r.passed for r in reports) else "FAILED"
print(f"{BACKEND:>10} law-check document: {dt:8.3f}s  [{status}]")
"""


def bench_law_checks():
    import os
    print("\nend-to-end document (adjunction+frobenius+ssmc+hyperdoctrine):",
          flush=True)
    for env_value in ("", "1"):
        env = dict(COMODCHECK_PURE=env_value) if env_value else {}
        full_env = {**os.environ, **env}
        subprocess.run([sys.executable, "-c", LAW_CHECK_SNIPPET],
                       env=full_env, check=True)
        if len(BACKENDS) == 1:
            break


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=48)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    bench_kernels(args.size, args.repeats)
    bench_law_checks()


if __name__ == "__main__":
    main()

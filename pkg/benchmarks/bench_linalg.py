"""Timing comparison of the two linear algebra backends.

Run from the repository root after an editable install:

    python benchmarks/bench_linalg.py

Times the elimination kernels on random dense matrices and one package
level workload (a stabilized hom table) under the pure Python backend and
the compiled one, and prints the speedups.
"""

import random
import time
from fractions import Fraction

import ddisc.linalg as linalg
from ddisc import GF, QQ, build_lambda, build_string_object, hom_table

SEED = 7


def random_qq(rng, n):
    pool = [0, 1, -1, 2, -2, Fraction(1, 2), Fraction(2, 3)]
    return [[rng.choice(pool) for _ in range(n)] for _ in range(n)]


def random_mod(rng, n, p):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def rank_qq_job():
    rng = random.Random(SEED)
    mats = [random_qq(rng, 40) for _ in range(4)]
    return [linalg.rank(m, 40, QQ) for m in mats]


def rref_mod_job():
    rng = random.Random(SEED)
    mats = [random_mod(rng, 60, 32003) for _ in range(4)]
    return [linalg.rref(m, 60, GF(32003))[1][-1] for m in mats]


def nullspace_job():
    rng = random.Random(SEED)
    mats = [random_mod(rng, 50, 5) for _ in range(6)]
    return [len(linalg.right_nullspace(m, 50, GF(5))[0]) for m in mats]


def hom_table_job():
    # modules rebuilt per call so resolution caches cannot carry over
    pres = build_lambda(2, 2, 1)
    x0 = build_string_object(pres, "X", 0)
    y1 = build_string_object(pres, "Y", -1)
    return hom_table(pres, y1, x0, 6).entries


JOBS = [
    ("rank over QQ, 40x40, 4 matrices", rank_qq_job),
    ("rref over GF(32003), 60x60, 4 matrices", rref_mod_job),
    ("nullspace over GF(5), 50x50, 6 matrices", nullspace_job),
    ("hom table Lambda(2,2,1), Y-1 -> X0, h <= 6", hom_table_job),
]


def best_of(fn, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best, result


def main():
    try:
        linalg.use_backend("speedups")
    except RuntimeError:
        print("compiled kernels not available; nothing to compare")
        return
    width = max(len(name) for name, _ in JOBS)
    print(f"{'workload':<{width}}  {'pure':>9}  {'speedups':>9}  speedup")
    for name, fn in JOBS:
        times = {}
        results = {}
        for backend in ("pure", "speedups"):
            linalg.use_backend(backend)
            times[backend], results[backend] = best_of(fn)
        assert results["pure"] == results["speedups"], name
        ratio = times["pure"] / times["speedups"]
        print(
            f"{name:<{width}}  {times['pure']:>8.3f}s  {times['speedups']:>8.3f}s"
            f"  x{ratio:.1f}"
        )
    linalg.use_backend("speedups")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Run from the repository root after installing:

    python benchmarks/bench_kernels.py
"""

import random
import time

from orthlat import _pykernels, kernels
from orthlat.eichler import standard_splitting, transport_witness
from orthlat.lattice import build


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_matmul(impl, reps, n, seed=0):
    rng = random.Random(seed)
    a = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(n * n)]
    b = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(n * n)]

    def run():
        for _ in range(reps):
            impl.imat_mul(a, b, n, n, n)

    return run


def bench_enum(impl, spec, box, norm=-2):
    gram = [x for row in build(spec).gram.int_rows() for x in row]
    n = build(spec).rank

    def run():
        impl.enum_norm_vectors(gram, n, norm, box)

    return run


def bench_transport(reps=60):
    lat = build("2U+<-4>")
    split = standard_splitting(lat)
    roots = lat.enumerate_vectors(-2, 2)

    def run():
        for i in range(reps):
            u, v = roots[i % len(roots)], roots[(i * 7 + 1) % len(roots)]
            if lat.norm(u) == lat.norm(v):
                try:
                    transport_witness(split, u, v)
                except Exception:
                    pass

    return run


def main():
    if kernels.BACKEND != "cython":
        print("compiled backend unavailable; timing pure Python against itself")
    compiled = kernels._impl
    rows = []
    for label, make in [
        ("imat_mul 12x12 x500", lambda impl: bench_matmul(impl, 500, 12)),
        ("imat_mul 21x21 x100", lambda impl: bench_matmul(impl, 100, 21)),
        ("enum 2U+A2 box 3", lambda impl: bench_enum(impl, "2U+A2", 3)),
        ("enum 2U+A2 box 5", lambda impl: bench_enum(impl, "2U+A2", 5)),
        ("enum 2U+<-6> box 6", lambda impl: bench_enum(impl, "2U+<-6>", 6)),
    ]:
        t_py = timeit(make(_pykernels))
        t_cy = timeit(make(compiled))
        rows.append((label, t_py, t_cy))

    print(f"{'kernel':26} {'pure':>10} {'selected':>10} {'speedup':>8}")
    for label, t_py, t_cy in rows:
        print(f"{label:26} {t_py * 1e3:9.1f}ms {t_cy * 1e3:9.1f}ms {t_py / t_cy:7.1f}x")

    t = timeit(bench_transport())
    print(f"\nend-to-end: 60 transport witnesses on 2U+<-4>: {t * 1e3:.0f}ms "
          f"(backend: {kernels.BACKEND})")


if __name__ == "__main__":
    main()

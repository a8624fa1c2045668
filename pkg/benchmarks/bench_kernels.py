#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python reference.

Usage: python3 benchmarks/bench_kernels.py [--tokens N] [--repeats R]
"""

import argparse
import random
import statistics
import time

import numpy as np

import draftcoach.kernels as K


def stream(n: int, vocab: int, seed: int = 0) -> np.ndarray:
    rng = random.Random(seed)
    return np.array([rng.randrange(vocab) for _ in range(n)], dtype=np.int32)


def bench(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tokens", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = {name: K.get_backend(name) for name in K.available_backends()}
    if "cython" not in backends:
        print("note: compiled extension not built; timing the pure backend only")

    n = args.tokens
    vocab = 5000
    ids = stream(n, vocab)
    half = n // 2

    cases = {
        f"mattr_sum (window=50, n={n})": lambda b: b.mattr_sum(ids, 50, vocab),
        f"mtld_factor_count (n={n})": lambda b: b.mtld_factor_count(ids, 0.720, vocab),
        f"ngram_overlap (n=3, {half} vs {n - half})": lambda b: b.ngram_overlap(
            ids[:half], ids[half:].copy(), 3
        ),
    }

    width = max(len(c) for c in cases)
    header = f"{'kernel':<{width}}  " + "".join(f"{name:>12}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for case, make in cases.items():
        row = f"{case:<{width}}  "
        timings = {}
        for name, backend in backends.items():
            timings[name] = bench(lambda: make(backend), args.repeats)
            row += f"{timings[name] * 1000:>10.1f}ms"
        if len(timings) == 2:
            row += f"{timings['python'] / timings['cython']:>9.1f}x"
        print(row)

    # sanity: identical results across backends
    if len(backends) == 2:
        py, cy = backends["python"], backends["cython"]
        assert tuple(py.mattr_sum(ids, 50, vocab)) == tuple(cy.mattr_sum(ids, 50, vocab))
        assert py.mtld_factor_count(ids, 0.720, vocab) == cy.mtld_factor_count(ids, 0.720, vocab)
        assert tuple(py.ngram_overlap(ids[:half], ids[half:].copy(), 3)) == tuple(
            cy.ngram_overlap(ids[:half], ids[half:].copy(), 3)
        )
        print("\nresults identical across backends")


if __name__ == "__main__":
    main()

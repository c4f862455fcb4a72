"""Compare the compiled polynomial kernel against the pure-Python fallback.

Run with:  python3 benchmarks/bench_poly.py
"""

import random
import time

from glnwebs import _poly_py

try:
    from glnwebs import _poly_c
except ImportError:
    _poly_c = None


def rand_terms(rng, size, span=60):
    return {rng.randint(-span, span): rng.randint(-10**6, 10**6) for _ in range(size)}


def bench(mod, pairs, reps):
    start = time.perf_counter()
    for _ in range(reps):
        for a, b in pairs:
            mod.mul_terms(a, b)
            mod.add_terms(a, b)
    return time.perf_counter() - start


def main():
    rng = random.Random(0)
    pairs = [(rand_terms(rng, 40), rand_terms(rng, 40)) for _ in range(50)]
    reps = 20

    # correctness cross-check before timing
    if _poly_c is not None:
        for a, b in pairs:
            assert _poly_c.mul_terms(a, b) == _poly_py.mul_terms(a, b)
            assert _poly_c.add_terms(a, b) == _poly_py.add_terms(a, b)

    t_py = bench(_poly_py, pairs, reps)
    print(f"pure python : {t_py:.3f} s")
    if _poly_c is None:
        print("compiled    : not built (install with the extension to compare)")
        return
    t_c = bench(_poly_c, pairs, reps)
    print(f"compiled    : {t_c:.3f} s")
    print(f"speedup     : {t_py / t_c:.2f}x")


if __name__ == "__main__":
    main()

"""Timing comparison of the numba kernels against the numpy fallback.

Run as: python benchmarks/bench_backends.py
"""

import time

import numpy as np

from signsl.expr import compile_program, parse
from signsl.kernels import build_kernels


def bench(fn, repeat=5):
    fn()  # warm up (jit compilation for the numba path)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    cases = {
        "fundamental q=sin(x), lam=1+2i, X=40": (
            "sin(x)", lambda k, c, s: k.integrate_fundamental(
                c, s, 1 + 2j, 40.0, 1e-10)),
        "fundamental deep well, lam=5i, X=40": (
            "-20/(1+x^16)", lambda k, c, s: k.integrate_fundamental(
                c, s, 5j, 40.0, 1e-10)),
        "prufer q=x^2/10, lam=30, X=60": (
            "x^2/10", lambda k, c, s: k.prufer_theta(c, s, 30.0, 60.0, 1e-9)),
    }

    backends = [("numpy", build_kernels(False)), ("numba", build_kernels(True))]

    print(f"{'case':<45} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, (src, run) in cases.items():
        code, consts = compile_program(parse(src))
        times = []
        for _, k in backends:
            times.append(bench(lambda k=k: run(k, code, consts)))
        print(f"{name:<45} {times[0] * 1e3:>8.2f}ms {times[1] * 1e3:>8.2f}ms "
              f"{times[0] / times[1]:>8.1f}x")


if __name__ == "__main__":
    main()

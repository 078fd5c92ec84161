"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--number N]

Each workload runs through the public API with the kernel module swapped in,
so the timings include the Python-level driver code that both share.
"""
import argparse
import sys
import timeit

from marcumq import MarcumArgs, eval_laguerre_series, laguerre_series, oracle, quadrature_q, special_functions
from marcumq import _kernels_py
from marcumq.laguerre_series import LaguerreCache

try:
    from marcumq import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

GRID = [MarcumArgs(nu, a, b) for nu in (0.5, 1, 2, 3, 5, 7.7) for a in (0.2, 1.2, 2.2) for b in (0.6, 1.6, 2.6)]


def use(mod):
    for target in (laguerre_series, oracle, special_functions):
        target.kernels = mod


def quadrature_grid():
    for args in GRID:
        quadrature_q(args)


def series_grid():
    for args in GRID:
        eval_laguerre_series(args)


def cached_sweep():
    cache = LaguerreCache(3.3, 1.7)
    for k in range(1, 400):
        eval_laguerre_series(MarcumArgs(3.3, 1.7, 0.01 * k), cache=cache, force=True)


def long_coefficients():
    LaguerreCache(2.5, 9.0).extend(5000)


def laguerre_points():
    for n in range(0, 200, 7):
        for x in (0.5, 5.0, 25.0):
            special_functions.laguerre(n, 1.5, x)


def bessel_points():
    for t in (0.1, 1.0, 10.0, 50.0, 300.0):
        for nu in (0.0, 2.5, 9.0):
            special_functions.log_bessel_i(nu, t)


WORKLOADS = [
    ("quadrature, 54 points", quadrature_grid),
    ("Laguerre series, 54 points", series_grid),
    ("cached b-sweep, 399 points", cached_sweep),
    ("5000 series coefficients", long_coefficients),
    ("Laguerre polynomial, 87 calls", laguerre_points),
    ("log Bessel I, 15 calls", bessel_points),
]


def best_of(func, repeat, number=None):
    timer = timeit.Timer(func)
    if number is None:
        number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=None, help="calls per timing (default: auto)")
    ns = parser.parse_args(argv)
    if _kernels_c is None:
        print("compiled kernels are not built; only the Python timings are available", file=sys.stderr)
    original = laguerre_series.kernels
    print(f"{'workload':<32}{'python':>12}{'compiled':>12}{'speedup':>10}")
    try:
        for name, func in WORKLOADS:
            use(_kernels_py)
            t_py = best_of(func, ns.repeat, ns.number)
            if _kernels_c is not None:
                use(_kernels_c)
                t_c = best_of(func, ns.repeat, ns.number)
                speed = f"{t_py / t_c:>9.1f}x"
                compiled = f"{t_c * 1e3:>10.3f}ms"
            else:
                speed, compiled = f"{'-':>10}", f"{'-':>12}"
            print(f"{name:<32}{t_py * 1e3:>10.3f}ms{compiled}{speed}")
    finally:
        use(original)
    return 0


if __name__ == "__main__":
    sys.exit(main())

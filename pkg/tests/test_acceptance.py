"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line (shown in the terminal summary
and on stdout) with the measured quantity next to its threshold.
"""
import math
import random
import time

from marcumq import (
    MarcumArgs,
    eval_canonical,
    eval_gideon_gurland,
    eval_laguerre_series,
    limit_a_zero,
    marcum_q,
    p_init,
    p_step,
    partial_sum,
    quadrature_q,
    truncation_bound,
)
from marcumq.inequality_oracles import love_bound, sewell_gap, szego_bound, szego_small_order_bound
from marcumq.laguerre_series import LaguerreCache
from marcumq.oracle import density_integral
from marcumq.special_functions import (
    bessel_i,
    brute_laguerre_sum,
    laguerre,
    laguerre_at_zero,
    reg_lower_gamma,
    reg_upper_gamma,
)

from .conftest import ACCEPTANCE_LINES
from .helpers import GRID_A, GRID_B, GRID_NU, ROOT_FLOOR, TABLE_POINTS, root_safe_rel


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _grid():
    return [MarcumArgs(nu, a, b) for nu in GRID_NU for a in GRID_A for b in GRID_B]


def test_1_reference_tables():
    start = time.perf_counter()
    worst = max(abs(marcum_q(nu, a, b, tol=1e-13).value - ref) for nu, a, b, ref in TABLE_POINTS)
    elapsed = time.perf_counter() - start
    record(
        1, "reference tables", worst <= 1e-12 and elapsed < 1.0,
        f"12 values, max |diff| {worst:.2e} (<= 1e-12), {elapsed:.3f} s (< 1 s)",
    )


def test_2_method_consensus():
    start = time.perf_counter()
    core = gg = 0.0
    for args in _grid():
        lag = eval_laguerre_series(args).value
        can = eval_canonical(args).value
        quad = quadrature_q(args).value
        gid = eval_gideon_gurland(args).value
        trio = (lag, can, quad)
        core = max(core, max(trio) - min(trio))
        gg = max(gg, max(abs(gid - v) for v in trio))
    elapsed = time.perf_counter() - start
    record(
        2, "four-way consensus", core <= 1e-10 and gg <= 1e-9 and elapsed < 30,
        f"72 points, laguerre/canonical/quadrature spread {core:.2e} (<= 1e-10), "
        f"gideon_gurland spread {gg:.2e} (<= 1e-9), {elapsed:.2f} s (< 30 s)",
    )


def test_3_truncation_bound():
    start = time.perf_counter()
    violations = 0
    decay_violations = 0
    tightest = math.inf  # smallest bound / actual over the run
    for args in _grid():
        if args.b == 0:
            q = 1.0
        else:
            q = quadrature_q(args).value
        cache = LaguerreCache(args.nu, args.a)
        c = 2 * truncation_bound(args, 1)
        for n0 in range(1, 51):
            bound = truncation_bound(args, n0)
            actual = abs(q - partial_sum(args, n0, cache))
            violations += actual > bound
            decay_violations += bound > c / n0
            if actual > 0:
                tightest = min(tightest, bound / actual)
    elapsed = time.perf_counter() - start
    ok = violations == 0 and decay_violations == 0 and elapsed < 120
    record(
        3, "truncation-bound soundness", ok,
        f"3600 (point, n0) pairs, {violations} bound violations, {decay_violations} above "
        f"C/n0 with C = 2 bound(1), min bound/actual {tightest:.3g}, {elapsed:.2f} s (< 120 s)",
    )


def test_4_laguerre_inequalities():
    xs = [0.5 * k for k in range(1, 61)]
    checks = failures = 0
    for alpha in (0, 1, 4.2):
        for x in xs:
            for n in range(81):
                v = abs(laguerre(n, alpha, x))
                checks += 2
                failures += v > szego_bound(n, alpha, x)
                failures += v > love_bound(n, alpha, x)
    for alpha in (-0.9, -0.5, -0.1):
        for x in xs:
            for n in range(81):
                checks += 1
                failures += abs(laguerre(n, alpha, x)) > szego_small_order_bound(n, alpha, x)
    for k in range(41):
        for n in range(1, 41):
            gap, bound = sewell_gap(0.5 * k, n)
            checks += 1
            failures += not 0 <= gap <= bound
    record(4, "Laguerre and exponential-tail inequalities", failures == 0,
           f"{checks} checks, {failures} violations")


def _generating_identity_error():
    worst = 0.0
    grid = [0.25, 0.5, 1.0, 2.0, 3.0, 4.0]
    for alpha in (0, 0.7, 2):
        for x in grid:
            for z in grid:
                total, weight = 0.0, 1.0
                for n in range(80):
                    total += weight * laguerre(n, alpha, x) / laguerre_at_zero(n, alpha)
                    weight *= -z / (n + 1)
                closed = (
                    math.gamma(alpha + 1) * math.exp(-z) * (x * z) ** (-alpha / 2)
                    * bessel_i(alpha, 2 * math.sqrt(x * z))
                )
                worst = max(worst, abs(total - closed))
    return worst


def _bessel_expansion_error():
    worst = 0.0
    grid = [0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    for nu in (1, 2.5):
        for s in grid:
            for z in grid:
                total = sum((-s) ** n * laguerre(n, nu - 1, z) / math.gamma(nu + n) for n in range(60))
                lhs = z ** (nu - 1) * math.exp(-z) * total
                rhs = (z / s) ** ((nu - 1) / 2) * math.exp(-z - s) * bessel_i(nu - 1, 2 * math.sqrt(s * z))
                worst = max(worst, abs(lhs - rhs))
    return worst


def test_5_identities():
    t3 = _generating_identity_error()
    t4 = _bessel_expansion_error()
    rng = random.Random(5)
    comp = 0.0
    pairs = [(rng.uniform(1e-3, 20), rng.uniform(0, 40)) for _ in range(2000)]
    pairs += [(0.5 * i, 2.0 * j) for i in range(1, 41) for j in range(21)]
    for s, x in pairs:
        comp = max(comp, abs(reg_lower_gamma(s, x) + reg_upper_gamma(s, x) - 1))
    cont = 0.0
    for nu in GRID_NU:
        for b in (0.3, 0.6, 1.0, 1.6, 2.6, 4.0):
            cont = max(cont, abs(eval_canonical(MarcumArgs(nu, 1e-8, b)).value - limit_a_zero(nu, b)))
    ok = t3 <= 1e-9 and t4 <= 1e-9 and comp <= 1e-14 and cont <= 1e-12
    record(
        5, "identities", ok,
        f"generating function {t3:.2e} (<= 1e-9), Bessel expansion {t4:.2e} (<= 1e-9), "
        f"gamma complement {comp:.2e} (<= 1e-14), a -> 0 continuity {cont:.2e} (<= 1e-12)",
    )


def test_6_recurrence_vs_definition():
    rng = random.Random(20240611)
    draws = 100
    worst = worst_plain = 0.0
    floored = total = 0
    for _ in range(draws):
        nu, a = rng.uniform(0.05, 10), rng.uniform(0, 10)
        b = rng.choice((-1, 1)) * rng.uniform(1e-3, 8)
        state = p_init(nu, a, b)
        values = [state.p_prev, state.p_curr]
        while state.n < 60:
            state = p_step(state, nu, a, b)
            values.append(state.p_curr)
        lag = [brute_laguerre_sum(n, nu - 1, a) for n in range(62)]
        for n, v in enumerate(values):
            scale = b**n * math.exp(-math.lgamma(nu + n + 1))
            ref = scale * lag[n]
            # neighbouring degrees at the same scale, for values next to a root
            neighbours = [scale * lag[m] for m in (n - 1, n + 1) if m >= 0]
            rel = root_safe_rel(v, ref, neighbours)
            plain = abs(v - ref) / abs(ref) if ref else abs(v)
            floored += plain != rel
            worst = max(worst, rel)
            worst_plain = max(worst_plain, plain)
            total += 1
    record(
        6, "recurrence vs explicit sum", worst <= 1e-11,
        f"{draws} draws x n <= 60, max relative error {worst:.2e} (<= 1e-11); "
        f"{floored}/{total} near-root values scaled by {ROOT_FLOOR:g} x neighbour size "
        f"(unscaled max {worst_plain:.2e})",
    )


def test_7_probabilistic_sanity():
    methods = ("laguerre", "canonical", "gideon_gurland", "quadrature")
    out_of_range = non_monotone = b0_not_one = 0
    rng = random.Random(7)
    orders = list(GRID_NU) + [rng.uniform(0.05, 12) for _ in range(10)]
    firsts = list(GRID_A) + [rng.uniform(0.01, 3) for _ in range(5)]
    for nu in orders:
        for a in firsts:
            cache = LaguerreCache(nu, a)
            sweep = [eval_laguerre_series(MarcumArgs(nu, a, 0.5 * k), cache=cache, force=True).value
                     for k in range(9)]
            out_of_range += sum(not 0 <= v <= 1 for v in sweep)
            non_monotone += sum(hi < lo for hi, lo in zip(sweep, sweep[1:]))
            for m in methods:
                b0_not_one += marcum_q(nu, a, 0, method=m).value != 1.0
                out_of_range += not 0 <= marcum_q(nu, a, 1.3, method=m).value <= 1
    norm = 0.0
    for nu in (0.5, 1, 3, 7.7):
        for a in GRID_A:
            total, _, _ = density_integral(MarcumArgs(nu, a, 0), 0.0)
            norm = max(norm, abs(total - 1))
    ok = out_of_range == 0 and non_monotone == 0 and b0_not_one == 0 and norm <= 1e-11
    record(
        7, "probabilistic sanity", ok,
        f"{out_of_range} values outside [0, 1], {non_monotone} increases along b-sweeps, "
        f"{b0_not_one} b = 0 values != 1, density normalization {norm:.2e} (<= 1e-11)",
    )

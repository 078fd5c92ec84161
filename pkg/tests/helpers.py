"""Shared reference helpers for the test suite."""
import math

from marcumq.special_functions import brute_laguerre_sum

# Denominator floor, as a fraction of the neighbouring-degree amplitude, used
# when a reference Laguerre value sits next to a root.
ROOT_FLOOR = 1e-2

# Three tables of Q_nu(a, b) at nu = 1, 3, 5, 7.7, 15 significant digits.
TABLE_ORDERS = (1, 3, 5, 7.7)
TABLES = {
    (0.2, 0.6): (0.838249985438908, 0.999166310455636, 0.999998670306184, 0.999999999927717),
    (1.2, 1.6): (0.501536568390858, 0.916936068900377, 0.994346394491553, 0.999944937223540),
    (2.2, 2.6): (0.426794627821735, 0.746459898209090, 0.929671935077756, 0.993735633182201),
}
TABLE_POINTS = [
    (nu, a, b, ref)
    for (a, b), refs in TABLES.items()
    for nu, ref in zip(TABLE_ORDERS, refs)
]

GRID_NU = (0.5, 1, 2, 3, 5, 7.7)
GRID_A = (0.2, 1.2, 2.2)
GRID_B = (0, 0.6, 1.6, 2.6)


def root_safe_rel(value, ref, neighbours):
    """|value - ref| / max(|ref|, ROOT_FLOOR * max |neighbours|).

    Plain relative error away from roots; next to a root of L_n the reference
    is a cancellation and the degree n-1/n+1 magnitudes set the scale.
    """
    den = max(abs(ref), ROOT_FLOOR * max((abs(v) for v in neighbours), default=0.0))
    if den == 0:
        return abs(value - ref)
    return abs(value - ref) / den


def brute_rel(value, n, alpha, x, scale=1.0):
    """root_safe_rel against ``scale * L_n^alpha(x)`` from the exact explicit sum."""
    ref = scale * brute_laguerre_sum(n, alpha, x)
    neighbours = [scale * brute_laguerre_sum(m, alpha, x) for m in (n - 1, n + 1) if m >= 0]
    return root_safe_rel(value, ref, neighbours)


def direct_p(nu, a, b, n):
    """b**n L_n^(nu-1)(a) / Gamma(nu+n+1) with the exact explicit sum."""
    return b**n * brute_laguerre_sum(n, nu - 1, a) * math.exp(-math.lgamma(nu + n + 1))

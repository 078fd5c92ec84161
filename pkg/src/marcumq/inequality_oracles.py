"""Uniform bounds on generalized Laguerre polynomials and the exponential tail.

These envelopes drive the convergence and truncation analysis of the
Laguerre series; they are exposed so that they can be checked numerically.
"""
from __future__ import annotations

import math

from .errors import MarcumDomainError
from .records import LaguerreIndex
from .special_functions import exp_tail


def _log_binom_ratio(n: int, alpha: float) -> float:
    # log( Gamma(alpha+n+1) / (n! Gamma(alpha+1)) )
    return math.lgamma(alpha + n + 1) - math.lgamma(n + 1) - math.lgamma(alpha + 1)


def _check_x(x: float) -> None:
    if not x > 0:
        raise MarcumDomainError(f"bound needs x > 0, got x={x!r}")


def szego_bound(n: int, alpha: float, x: float) -> float:
    """|L_n^alpha(x)| <= Gamma(alpha+n+1)/(n! Gamma(alpha+1)) e**(x/2), alpha >= 0."""
    idx = LaguerreIndex(n, alpha)
    if alpha < 0:
        raise MarcumDomainError(f"szego_bound needs alpha >= 0, got {alpha!r}")
    _check_x(x)
    return math.exp(_log_binom_ratio(idx.n, alpha) + 0.5 * x)


def love_bound(n: int, alpha: float, x: float) -> float:
    """|L_n^alpha(x)| <= Gamma(alpha+n+1)/n! (x/2)**-alpha e**(x/2), alpha >= 0."""
    idx = LaguerreIndex(n, alpha)
    if alpha < 0:
        raise MarcumDomainError(f"love_bound needs alpha >= 0, got {alpha!r}")
    _check_x(x)
    return math.exp(
        math.lgamma(alpha + idx.n + 1) - math.lgamma(idx.n + 1) - alpha * math.log(0.5 * x) + 0.5 * x
    )


def szego_small_order_bound(n: int, alpha: float, x: float) -> float:
    """|L_n^alpha(x)| <= (2 - Gamma(alpha+n+1)/(n! Gamma(alpha+1))) e**(x/2), -1 < alpha <= 0."""
    idx = LaguerreIndex(n, alpha)
    if alpha > 0:
        raise MarcumDomainError(f"szego_small_order_bound needs -1 < alpha <= 0, got {alpha!r}")
    _check_x(x)
    return (2.0 - math.exp(_log_binom_ratio(idx.n, alpha))) * math.exp(0.5 * x)


def sewell_gap(x: float, n: int) -> tuple[float, float]:
    """(e**x - sum_{k<=n} x**k/k!, x e**x / n); the first never exceeds the second."""
    if int(n) != n or n < 1:
        raise MarcumDomainError(f"sewell_gap needs an integer n >= 1, got {n!r}")
    if not x >= 0:
        raise MarcumDomainError(f"sewell_gap needs x >= 0, got {x!r}")
    return exp_tail(x, int(n)), x * math.exp(x) / n


def small_order_coefficient(nu: float, n: int) -> float:
    """n! / (nu+n) * (2/Gamma(nu+n) - 1/(n! Gamma(nu))).

    Bounded by 2 for 0 < nu <= 1 and every n >= 0; this is the step that
    gives the 0 < nu <= 1 convergence envelope.
    """
    if not 0 < nu <= 1:
        raise MarcumDomainError(f"needs 0 < nu <= 1, got {nu!r}")
    if int(n) != n or n < 0:
        raise MarcumDomainError(f"needs integer n >= 0, got {n!r}")
    # n!/Gamma(nu+n) and 1/Gamma(nu) stay finite for the ranges of interest
    ratio = math.exp(math.lgamma(n + 1) - math.lgamma(nu + n))
    return (2.0 * ratio - 1.0 / math.gamma(nu)) / (nu + n)

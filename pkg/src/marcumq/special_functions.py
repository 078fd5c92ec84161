"""Special-function kernels: gamma, incomplete gamma, Bessel I, Laguerre.

All functions are pure. Incomplete gamma values are regularized throughout.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ._backend import kernels
from .errors import MarcumDomainError
from .records import LaguerreIndex

# Largest argument for which Gamma(x) is a finite double.
GAMMA_MAX_ARG = 171.6243769563027
_LN2 = math.log(2.0)


def gamma(x: float) -> float:
    """Euler gamma function for x > 0."""
    if not x > 0:
        raise MarcumDomainError(f"gamma requires x > 0, got {x!r}")
    if x > GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x!r}) overflows; use log_gamma")
    return math.gamma(x)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise MarcumDomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def _check_gamma_args(s: float, x: float) -> None:
    if not s > 0:
        raise MarcumDomainError(f"incomplete gamma requires s > 0, got s={s!r}")
    if not x >= 0:
        raise MarcumDomainError(f"incomplete gamma requires x >= 0, got x={x!r}")


def reg_gamma_pair(s: float, x: float) -> tuple[float, float]:
    """Return (P(s, x), Q(s, x)), the regularized lower and upper gamma.

    The smaller-error member is computed directly (series below x = s + 1,
    continued fraction above) and the other as its complement.
    """
    _check_gamma_args(s, x)
    if x == 0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    lg = math.lgamma(s)
    if x < s + 1:
        p = min(1.0, kernels.reg_gamma_series(s, x, lg))
        return p, 1.0 - p
    q = min(1.0, kernels.reg_gamma_cf(s, x, lg))
    return 1.0 - q, q


def reg_upper_gamma(s: float, x: float) -> float:
    """Gamma(s, x) / Gamma(s)."""
    return reg_gamma_pair(s, x)[1]


def reg_lower_gamma(s: float, x: float) -> float:
    """gamma(s, x) / Gamma(s)."""
    return reg_gamma_pair(s, x)[0]


def exp_tail(y: float, m: int) -> float:
    """e**y - sum_{k=0}^{m} y**k / k!, summed without cancellation.

    For m >= -1 and y >= 0. Below y = m + 2 the tail is summed forward from
    k = m + 1; above it the identity tail = e**y P(m+1, y) is used.
    """
    if m < -1:
        raise MarcumDomainError(f"exp_tail requires m >= -1, got {m!r}")
    if y < 0:
        raise MarcumDomainError(f"exp_tail requires y >= 0, got {y!r}")
    if m == -1:
        return math.exp(y)
    if y == 0:
        return 0.0
    if y >= m + 2:
        try:
            return math.exp(y) * reg_lower_gamma(m + 1, y)
        except OverflowError:
            return math.inf
    k = m + 1
    term = math.exp(k * math.log(y) - math.lgamma(k + 1))
    total = 0.0
    while term > 1e-17 * total:
        total += term
        k += 1
        term *= y / k
    return total


def log_bessel_i(nu: float, t: float) -> float:
    """ln I_nu(t) for nu > -1, t >= 0, from the ascending series."""
    if not nu > -1:
        raise MarcumDomainError(f"log_bessel_i requires nu > -1, got {nu!r}")
    if not t >= 0:
        raise MarcumDomainError(f"log_bessel_i requires t >= 0, got {t!r}")
    if t == 0:
        if nu == 0:
            return 0.0
        return -math.inf if nu > 0 else math.inf
    return (
        nu * (math.log(t) - _LN2)
        - math.lgamma(nu + 1)
        + kernels.log_bessel_scaled(nu, 0.25 * t * t)
    )


def bessel_i(nu: float, t: float) -> float:
    """Modified Bessel function of the first kind I_nu(t), nu >= 0, t >= 0."""
    if not nu >= 0:
        raise MarcumDomainError(f"bessel_i requires nu >= 0, got {nu!r}")
    lv = log_bessel_i(nu, t)
    try:
        return math.exp(lv)
    except OverflowError:
        raise OverflowError(f"I_{nu}({t}) exceeds the double range") from None


def laguerre(n: int, alpha: float, x: float) -> float:
    """Generalized Laguerre polynomial L_n^(alpha)(x)."""
    idx = LaguerreIndex(n, alpha)
    return kernels.laguerre(idx.n, float(idx.alpha), float(x))


def laguerre_at_zero(n: int, alpha: float) -> float:
    """L_n^(alpha)(0) = Gamma(n+alpha+1) / (Gamma(alpha+1) n!)."""
    idx = LaguerreIndex(n, alpha)
    if idx.n > 2000:
        return math.exp(
            math.lgamma(idx.n + alpha + 1) - math.lgamma(alpha + 1) - math.lgamma(idx.n + 1)
        )
    value = 1.0
    for k in range(1, idx.n + 1):
        value *= (k + alpha) / k
    return value


def brute_laguerre_sum(n: int, alpha: float, x: float) -> float:
    """L_n^(alpha)(x) from the explicit finite sum, in exact rational arithmetic.

    The gamma ratio Gamma(n+alpha+1)/Gamma(k+alpha+1) is the finite product
    (k+alpha+1)...(n+alpha), so every term is rational in the (binary-exact)
    inputs. With alpha = A/2**s and x = X/2**t the whole sum times
    n! 2**(s n) 2**(t n) is an integer, which is formed first and divided
    once. Slow; intended as a reference for moderate n.
    """
    idx = LaguerreIndex(n, alpha)
    n = idx.n
    al = Fraction(alpha)
    fx = Fraction(x)
    s = al.denominator.bit_length() - 1
    t = fx.denominator.bit_length() - 1
    big_a, big_x = al.numerator, fx.numerator
    total = 0
    rising = 1  # prod_{j=k+1}^{n} (j 2**s + A)
    binom = 1  # C(n, k), built downward from k = n
    for k in range(n, -1, -1):
        total += binom * rising * (-big_x) ** k << (s * k + t * (n - k))
        rising *= (k << s) + big_a
        binom = binom * k // (n - k + 1)
    return float(Fraction(total, math.factorial(n) << (s * n + t * n)))

"""Independent series for Q_nu(a, b), used as cross-checks and user methods.

* canonical: Poisson(a**2/2) mixture of regularized upper gamma values;
* Gideon-Gurland type: Laguerre expansion in powers of a**2/2;
* the a -> 0 limit, Gamma(nu, b**2/2) / Gamma(nu).
"""
from __future__ import annotations

import math

from .errors import IllConditionedError, MarcumDomainError, NonConvergenceError
from .laguerre_series import ILL_CONDITIONED_Y, _clamp_probability
from .records import EvalReport, MarcumArgs, Method, TruncationPolicy
from .special_functions import reg_upper_gamma

# Full re-evaluation of the upper gamma every this many recurrence steps.
REANCHOR_EVERY = 64
_EPS = 2.0 ** -52


def limit_a_zero(nu: float, b: float) -> float:
    """Q_nu(0, b) = Gamma(nu, b**2/2) / Gamma(nu)."""
    if not nu > 0:
        raise MarcumDomainError(f"order must satisfy nu > 0, got nu={nu!r}")
    if not b >= 0:
        raise MarcumDomainError(f"second argument must satisfy b >= 0, got b={b!r}")
    return reg_upper_gamma(nu, 0.5 * b * b)


def eval_canonical(args: MarcumArgs, policy: TruncationPolicy | None = None) -> EvalReport:
    """Poisson-weighted sum of Q(nu+n, y), stopped on the remaining Poisson mass."""
    policy = policy or TruncationPolicy()
    nu, x, y = args.nu, args.x, args.y
    if y == 0:
        return EvalReport(1.0, 0, 0.0, Method.CANONICAL)
    q = reg_upper_gamma(nu, y)
    if x == 0:
        return EvalReport(q, 1, 0.0, Method.CANONICAL)
    # d = y**s e**-y / Gamma(s+1), the step Q(s+1, y) - Q(s, y)
    log_y = math.log(y)
    d = math.exp(nu * log_y - y - math.lgamma(nu + 1))
    weight = math.exp(-x)
    total = 0.0
    comp = 0.0
    for n in range(policy.max_terms):
        term = weight * q
        t = total + term
        comp += (total - t) + term if total >= term else (term - t) + total
        total = t
        # tail mass sum_{k>n} w_k <= w_{n+1} / (1 - x/(n+2)) once n + 2 > x
        w_next = weight * x / (n + 1)
        if n + 2 > x:
            residual = w_next / (1.0 - x / (n + 2))
            if residual <= policy.target_eps:
                value = _clamp_probability(total + comp, residual + 8 * _EPS)
                return EvalReport(value, n + 1, residual, Method.CANONICAL)
        s = nu + n
        if (n + 1) % REANCHOR_EVERY == 0:
            q = reg_upper_gamma(s + 1, y)
            d = math.exp((s + 1) * log_y - y - math.lgamma(s + 2))
        else:
            q = min(1.0, q + d)
            d *= y / (s + 1)
        weight = w_next
    raise NonConvergenceError(
        f"canonical series: Poisson tail above {policy.target_eps:g} after "
        f"{policy.max_terms} terms",
        terms_used=policy.max_terms,
    )


def eval_gideon_gurland(
    args: MarcumArgs, policy: TruncationPolicy | None = None, force: bool = False
) -> EvalReport:
    """Laguerre expansion in powers of x = a**2/2 around the a = 0 limit.

    No truncation bound is known for this expansion: it stops once three
    consecutive terms fall below target_eps/10, and ``error_bound`` is that
    heuristic residual (flagged via ``bound_is_estimate``).
    """
    policy = policy or TruncationPolicy()
    nu, x, y = args.nu, args.x, args.y
    if not args.a > 0:
        raise MarcumDomainError(
            f"the Gideon-Gurland series needs a > 0, got a={args.a!r}; use limit_a_zero"
        )
    if y == 0:
        return EvalReport(1.0, 0, 0.0, Method.GIDEON_GURLAND, bound_is_estimate=True)
    if not force and x > ILL_CONDITIONED_Y:
        raise IllConditionedError(
            f"a**2/2 = {x:.6g} > {ILL_CONDITIONED_Y}: Gideon-Gurland terms grow like "
            "e**(a**2/2); use another method or force=True"
        )
    lead = reg_upper_gamma(nu, y)
    # e**-y y**nu (-x)**n / Gamma(nu+n), starting at n = 1
    g = -math.exp(-y + nu * math.log(y) + math.log(x) - math.lgamma(nu + 1))
    # L_{n-1}^(nu)(y) by the recurrence
    l_prev, l_curr = 0.0, 1.0
    total = 0.0
    comp = 0.0
    abs_total = 0.0
    small_run = 0
    threshold = policy.target_eps / 10
    residual = math.inf
    for n in range(1, policy.max_terms + 1):
        term = g * l_curr / n
        t = total + term
        comp += (total - t) + term if abs(total) >= abs(term) else (term - t) + total
        total = t
        abs_total += abs(term)
        small_run = small_run + 1 if abs(term) < threshold else 0
        if small_run >= 3:
            residual = 3 * threshold
            value = lead - (total + comp)
            slack = residual + 8 * _EPS * (abs_total + 1.0)
            value = _clamp_probability(value, slack)
            return EvalReport(value, n + 1, residual, Method.GIDEON_GURLAND, bound_is_estimate=True)
        # L_n from L_{n-1}, L_{n-2}: k = n - 1
        k = n - 1
        if k == 0:
            l_next = 1.0 + nu - y
        else:
            l_next = ((2 * k + nu + 1 - y) * l_curr - (k + nu) * l_prev) / (k + 1)
        l_prev, l_curr = l_curr, l_next
        g *= -x / (nu + n)
    raise NonConvergenceError(
        f"Gideon-Gurland series: terms still above {threshold:g} after {policy.max_terms} terms",
        terms_used=policy.max_terms,
    )

"""Q_nu(a, b) from its generalized-Laguerre power series in b**2/2.

With x = a**2/2 and y = b**2/2,

    Q_nu(a, b) = 1 - e**-x y**nu sum_n (-y)**n L_n^(nu-1)(x) / Gamma(nu+n+1).

The coefficients depend on (nu, a) only and come from the three-term
recurrence for P_{nu,n}; a :class:`LaguerreCache` keeps them for reuse across
many values of b.
"""
from __future__ import annotations

import math
import threading
from array import array

from ._backend import kernels
from .errors import (
    IllConditionedError,
    InfeasibleError,
    InternalConsistencyError,
    MarcumDomainError,
    NonConvergenceError,
)
from .records import EvalReport, MarcumArgs, Method, PState, TruncationPolicy
from .special_functions import exp_tail

# Beyond these the alternating series loses too many digits in double precision.
ILL_CONDITIONED_Y = 45.0
ILL_CONDITIONED_BOUND = 1e3
# Summation continues to this bound when max_terms allows; target_eps is the guarantee.
FULL_PRECISION_EPS = 1e-16

_EPS = 2.0 ** -52


def p_init(nu: float, a: float, b: float) -> PState:
    """Initial P_{nu,0}, P_{nu,1} at the transformed arguments (a, b)."""
    if not nu > 0:
        raise MarcumDomainError(f"order must satisfy nu > 0, got nu={nu!r}")
    p0 = 1.0 / math.gamma(nu + 1)
    p1 = (nu - a) * b / math.gamma(nu + 2)
    return PState(n=1, p_curr=p1, p_prev=p0)


def p_step(state: PState, nu: float, a: float, b: float) -> PState:
    """Advance P_{nu,n}(a, b) = b**n L_n^(nu-1)(a) / Gamma(nu+n+1) by one index."""
    n = state.n
    if n < 1:
        raise MarcumDomainError("p_step needs a state with n >= 1")
    p_next = ((2 * n + nu - a) * b / ((n + 1) * (nu + n + 1))) * state.p_curr - (
        (n + nu - 1) * b * b / ((n + 1) * (nu + n) * (nu + n + 1))
    ) * state.p_prev
    return PState(n=n + 1, p_curr=p_next, p_prev=state.p_curr)


class LaguerreCache:
    """Series coefficients for a fixed (nu, a), grown on demand.

    Entry n is stored as a mantissa ``vals[n]`` and power-of-two exponent
    ``shifts[n]`` of Gamma(nu+1) L_n^(nu-1)(x) / Gamma(nu+n+1), so neither
    large n nor large x overflows. Reads and growth are serialized by an
    internal lock.
    """

    def __init__(self, nu: float, a: float):
        if not nu > 0:
            raise MarcumDomainError(f"order must satisfy nu > 0, got nu={nu!r}")
        if not a > 0:
            raise MarcumDomainError(f"the Laguerre series needs a > 0, got a={a!r}")
        self.nu = float(nu)
        self.a = float(a)
        self.x = 0.5 * self.a * self.a
        self.vals = array("d", [1.0])
        self.shifts = array("q", [0])
        self._state = None
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self.vals)

    def __repr__(self) -> str:
        return f"LaguerreCache(nu={self.nu!r}, a={self.a!r}, len={len(self)})"

    def extend(self, upto: int) -> None:
        """Make sure coefficients 0..upto are present."""
        with self._lock:
            if upto < len(self.vals):
                return
            if self._state is None:
                c1 = (self.nu - self.x) / (self.nu + 1)
                self.vals.append(c1)
                self.shifts.append(0)
                self._state = (1, 1.0, c1, 0)
            if upto > self._state[0]:
                vals, shifts, self._state = kernels.lag_coeffs_extend(
                    self.nu, self.x, *self._state, upto
                )
                self.vals.extend(vals)
                self.shifts.extend(shifts)

    def coefficient(self, n: int) -> float:
        """(-1)**n e**-x L_n^(nu-1)(x) / Gamma(nu+n+1) as a plain float."""
        self.extend(n)
        m = self.vals[n]
        if m == 0.0:
            return 0.0
        log_mag = (
            math.log(abs(m)) + self.shifts[n] * math.log(2.0) - self.x - math.lgamma(self.nu + 1)
        )
        sign = math.copysign(1.0, m) * (-1.0 if n % 2 else 1.0)
        return sign * math.exp(log_mag)

    def power_sum(self, y: float, nterms: int) -> tuple[float, float]:
        """sum_{n<nterms} c_n (-y)**n and the sum of absolute terms."""
        with self._lock:
            self.extend(nterms - 1)
            return kernels.laguerre_sum(self.vals, self.shifts, y, nterms)


def cache_build(nu: float, a: float, upto: int) -> LaguerreCache:
    """Precompute coefficients 0..upto for reuse over many b."""
    cache = LaguerreCache(nu, a)
    cache.extend(upto)
    return cache


def _prefactor(args: MarcumArgs) -> float:
    # e**-x y**nu / Gamma(nu+1)
    return math.exp(-args.x + args.nu * math.log(args.y) - math.lgamma(args.nu + 1))


def _check_series_args(args: MarcumArgs) -> None:
    if not args.a > 0:
        raise MarcumDomainError(
            f"the Laguerre series needs a > 0, got a={args.a!r}; use limit_a_zero for a = 0"
        )


def _resolve_cache(args: MarcumArgs, cache: LaguerreCache | None) -> LaguerreCache:
    if cache is None:
        return LaguerreCache(args.nu, args.a)
    if cache.nu != args.nu or cache.a != args.a:
        raise MarcumDomainError(
            f"cache built for (nu={cache.nu!r}, a={cache.a!r}) used with "
            f"(nu={args.nu!r}, a={args.a!r})"
        )
    return cache


def truncation_bound(args: MarcumArgs, n0: int) -> float:
    """Closed-form bound on |Q - partial sum through index n0|, decaying as 1/n0.

    nu >= 1: the smaller of the Szego- and Love-based bounds; 0 < nu < 1: the
    small-order Szego bound. Both follow from Sewell's inequality.
    """
    if n0 < 1:
        raise MarcumDomainError(f"n0 must be >= 1, got {n0!r}")
    x, y, nu = args.x, args.y, args.nu
    if y == 0:
        return 0.0
    base = y - 0.5 * x
    if nu >= 1:
        first = base - math.log(n0 + 1) + nu * math.log(y) - math.lgamma(nu)
        if x > 0:
            second = base - math.log(n0 + 1) + math.log(y) + (nu - 1) * math.log(2 * y / x)
            first = min(first, second)
        return _exp_or_inf(first)
    return 2.0 * _exp_or_inf(base - math.log(n0) + (nu + 1) * math.log(y))


def tail_bound(args: MarcumArgs, n0: int) -> float:
    """Sharper truncation bound before Sewell's inequality is applied.

    Same envelopes as :func:`truncation_bound` but multiplying the exact
    exponential-series tail e**y - sum_{k<=m} y**k/k!, which decays
    factorially rather than as 1/n0.
    """
    if n0 < 0:
        raise MarcumDomainError(f"n0 must be >= 0, got {n0!r}")
    x, y, nu = args.x, args.y, args.nu
    if y == 0:
        return 0.0
    if nu >= 1:
        tail = exp_tail(y, n0 + 1)
        log_env = (nu - 1) * math.log(y) - math.lgamma(nu)
        if x > 0:
            log_env = min(log_env, (nu - 1) * math.log(2 * y / x))
        return _exp_or_inf(log_env - 0.5 * x) * tail
    tail = exp_tail(y, n0)
    return 2.0 * _exp_or_inf(nu * math.log(y) - 0.5 * x) * tail


def _exp_or_inf(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def _stop_params(args: MarcumArgs) -> tuple[float, int]:
    """log of the envelope prefactor of :func:`tail_bound`, and the tail offset."""
    x, y, nu = args.x, args.y, args.nu
    if nu >= 1:
        log_env = (nu - 1) * math.log(y) - math.lgamma(nu)
        if x > 0:
            log_env = min(log_env, (nu - 1) * math.log(2 * y / x))
        return log_env - 0.5 * x, 1
    return math.log(2.0) + nu * math.log(y) - 0.5 * x, 0


def required_terms(args: MarcumArgs, eps: float, cap: int = 10**18) -> int:
    """Smallest n0 >= 1 with ``truncation_bound(args, n0) <= eps``.

    Raises :class:`InfeasibleError` when that n0 exceeds ``cap``.
    """
    if not eps > 0:
        raise MarcumDomainError(f"eps must be positive, got {eps!r}")
    if args.y == 0:
        return 1
    if args.nu >= 1:
        scale = truncation_bound(args, 1) * 2
        estimate = scale / eps - 1
    else:
        scale = truncation_bound(args, 1)
        estimate = scale / eps
    if not math.isfinite(estimate) or estimate > cap:
        raise InfeasibleError(
            f"truncation bound needs about {estimate:.3g} terms for eps={eps!r}, cap is {cap}",
            required=None if not math.isfinite(estimate) else math.ceil(estimate),
        )
    n0 = max(1, math.ceil(estimate))
    while n0 > 1 and truncation_bound(args, n0 - 1) <= eps:
        n0 -= 1
    while truncation_bound(args, n0) > eps:
        n0 += 1
    if n0 > cap:
        raise InfeasibleError(f"required n0={n0} exceeds cap {cap}", required=n0)
    return n0


def check_conditioning(args: MarcumArgs) -> None:
    """Raise :class:`IllConditionedError` where double precision cannot be trusted."""
    if args.y > ILL_CONDITIONED_Y:
        raise IllConditionedError(
            f"b**2/2 = {args.y:.6g} > {ILL_CONDITIONED_Y}: series cancellation exceeds double "
            "precision; use quadrature or force=True"
        )
    bound = truncation_bound(args, 1)
    if bound > ILL_CONDITIONED_BOUND:
        raise IllConditionedError(
            f"term envelope {bound:.3g} > {ILL_CONDITIONED_BOUND:g}: series cancellation "
            "exceeds double precision; use quadrature or force=True"
        )


def partial_sum(args: MarcumArgs, n0: int, cache: LaguerreCache | None = None) -> float:
    """1 - (series through index n0), unclamped and without guards."""
    _check_series_args(args)
    if n0 < 0:
        raise MarcumDomainError(f"n0 must be >= 0, got {n0!r}")
    if args.y == 0:
        return 1.0
    cache = _resolve_cache(args, cache)
    s, _ = cache.power_sum(args.y, n0 + 1)
    return 1.0 - _prefactor(args) * s


def eval_laguerre_series(
    args: MarcumArgs,
    policy: TruncationPolicy | None = None,
    cache: LaguerreCache | None = None,
    force: bool = False,
) -> EvalReport:
    """Evaluate Q_nu(a, b) by the Laguerre series with an a-priori term count.

    The number of terms is the smallest one for which the truncation bound
    is at most min(``policy.target_eps``, 1e-16), or ``max_terms`` if that
    floor is out of reach but the target is met. The achieved bound is
    returned as ``error_bound``.
    """
    policy = policy or TruncationPolicy()
    _check_series_args(args)
    if args.y == 0:
        return EvalReport(1.0, 0, 0.0, Method.LAGUERRE)
    if not force:
        check_conditioning(args)
    log_k, offset = _stop_params(args)
    log_goal = math.log(min(policy.target_eps, FULL_PRECISION_EPS))
    n0, log_bound = kernels.stop_index(log_k, args.y, offset, log_goal, 1, policy.max_terms - 1)
    if not log_bound <= math.log(policy.target_eps):
        raise NonConvergenceError(
            f"truncation bound {math.exp(min(log_bound, 700)):.3g} still above "
            f"{policy.target_eps:g} after {policy.max_terms} terms",
            terms_used=policy.max_terms,
            error_bound=_exp_or_inf(log_bound),
        )
    cache = _resolve_cache(args, cache)
    s, abs_s = cache.power_sum(args.y, n0 + 1)
    pref = _prefactor(args)
    value = 1.0 - pref * s
    bound = tail_bound(args, n0)
    slack = bound + 8 * _EPS * (pref * abs_s + 1.0)
    value = _clamp_probability(value, slack)
    return EvalReport(value, n0 + 1, bound, Method.LAGUERRE)


def _clamp_probability(value: float, slack: float) -> float:
    if value < 0.0:
        if value < -slack:
            raise InternalConsistencyError(f"Q = {value!r} below 0 by more than {slack:.3g}")
        return 0.0
    if value > 1.0:
        if value > 1.0 + slack:
            raise InternalConsistencyError(f"Q = {value!r} above 1 by more than {slack:.3g}")
        return 1.0
    return value

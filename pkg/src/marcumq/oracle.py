"""Reference values of Q_nu(a, b) by adaptive quadrature of its defining integral.

    Q_nu(a, b) = a**(1-nu) int_b^inf t**nu exp(-(t**2+a**2)/2) I_{nu-1}(a t) dt

The integrand is a probability density on [0, inf) (the non-central chi
density with 2 nu degrees of freedom), so for small b the complement
1 - int_0^b is integrated instead. Nothing here touches the series code.
"""
from __future__ import annotations

import heapq
import math

from ._backend import kernels
from .errors import MarcumDomainError, ToleranceNotMetError
from .records import EvalReport, MarcumArgs, Method

MIN_TOL = 1e-13
MAX_INTERVALS = 2000
INITIAL_PIECES = 8


def _check(args: MarcumArgs) -> None:
    if not args.a > 0:
        raise MarcumDomainError(f"quadrature needs a > 0, got a={args.a!r}")


def integrand(args: MarcumArgs, t: float) -> float:
    """Density t**nu exp(-(t**2+a**2)/2) I_{nu-1}(a t) / a**(nu-1) at t >= 0."""
    _check(args)
    if not t >= 0:
        raise MarcumDomainError(f"integrand needs t >= 0, got t={t!r}")
    lf = kernels.log_integrand(args.nu, args.a, float(t), math.lgamma(args.nu))
    try:
        return math.exp(lf)
    except OverflowError:
        return math.inf


def _adaptive(args: MarcumArgs, u0: float, u1: float, tol: float, scale: float = 1.0,
              power: float = 1.0) -> tuple[float, float, int]:
    """Global adaptive G7/K15 over u in [u0, u1] with t = scale * u**power.

    Returns (integral, error estimate, number of intervals). Interval
    contributions are summed in a fixed order so results are deterministic.
    """
    nu, a = args.nu, args.a
    lg = math.lgamma(nu)
    if u1 <= u0:
        return 0.0, 0.0, 0
    heap = []
    width = (u1 - u0) / INITIAL_PIECES
    for i in range(INITIAL_PIECES):
        lo = u0 + i * width
        hi = u1 if i == INITIAL_PIECES - 1 else lo + width
        val, err = kernels.gk15(nu, a, lg, lo, hi, scale, power)
        heapq.heappush(heap, (-err, lo, hi, val))
    err_total = sum(-item[0] for item in heap)
    while err_total > tol:
        if len(heap) >= MAX_INTERVALS:
            raise ToleranceNotMetError(
                f"quadrature error estimate {err_total:.3g} above tol {tol:g} "
                f"after {MAX_INTERVALS} intervals",
                error_bound=err_total,
            )
        neg_err, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise ToleranceNotMetError(
                f"quadrature interval [{lo!r}, {hi!r}] cannot be split further",
                error_bound=err_total,
            )
        left = kernels.gk15(nu, a, lg, lo, mid, scale, power)
        right = kernels.gk15(nu, a, lg, mid, hi, scale, power)
        heapq.heappush(heap, (-left[1], lo, mid, left[0]))
        heapq.heappush(heap, (-right[1], mid, hi, right[0]))
        err_total += left[1] + right[1] + neg_err
        if err_total <= tol:
            err_total = sum(-item[0] for item in heap)
    pieces = sorted((lo, val) for _, lo, _, val in heap)
    return math.fsum(val for _, val in pieces), err_total, len(pieces)


def tail_cutoff(args: MarcumArgs, start: float, tol: float) -> tuple[float, float]:
    """Upper limit T >= start with int_T^inf f(t) dt bounded below tol/10.

    Uses d/dt log f <= nu/t - t + a (I'_mu/I_mu <= 1), so beyond T the
    density is dominated by f(T) exp(-k (t - T)) with k = T - a - nu/T > 0
    and the tail by f(T)/k. Returns (T, tail bound).
    """
    nu, a = args.nu, args.a
    c = 10.0 + math.sqrt(2 * nu * max(1.0, math.log(nu)))
    t_cut = max(start, a) + c
    while True:
        k = t_cut - a - nu / t_cut
        if k > 0:
            bound = integrand(args, t_cut) / k
            if bound < tol / 10:
                return t_cut, bound
        t_cut += 1.0


def density_integral(args: MarcumArgs, lo: float, hi: float | None = None,
                     tol: float = MIN_TOL) -> tuple[float, float, int]:
    """int_lo^hi of the density (hi=None: to infinity).

    Returns (value, error bound, number of subintervals).
    """
    _check(args)
    tail = 0.0
    if hi is None:
        hi, tail = tail_cutoff(args, lo, tol)
    if args.nu < 1 and lo == 0:
        # t = hi * w**p with p = 1/(2 nu) smooths the t**(2 nu - 1) endpoint behaviour
        power = 1.0 / (2 * args.nu)
        val, err, pieces = _adaptive(args, 0.0, 1.0, 0.9 * tol, scale=hi, power=power)
    else:
        val, err, pieces = _adaptive(args, lo, hi, 0.9 * tol)
    return val, err + tail, pieces


def use_complement(args: MarcumArgs) -> bool:
    """True when int_0^b is the better-conditioned route (b**2/2 < nu)."""
    return args.y < args.nu


def quadrature_q(args: MarcumArgs, tol: float = MIN_TOL, mode: str | None = None) -> EvalReport:
    """Q_nu(a, b) by adaptive quadrature, absolute error <= tol.

    ``mode`` forces "direct" (int_b^inf) or "complement" (1 - int_0^b); by
    default the complement is used when b**2/2 < nu.
    """
    _check(args)
    if not tol >= MIN_TOL:
        raise MarcumDomainError(f"quadrature tol must be >= {MIN_TOL:g}, got {tol!r}")
    if mode is None:
        mode = "complement" if use_complement(args) else "direct"
    if mode == "complement":
        if args.b == 0:
            return EvalReport(1.0, 0, 0.0, Method.QUADRATURE)
        val, err, pieces = density_integral(args, 0.0, args.b, tol)
        value = 1.0 - val
    elif mode == "direct":
        val, err, pieces = density_integral(args, args.b, None, tol)
        value = val
    else:
        raise MarcumDomainError(f"unknown quadrature mode {mode!r}")
    value = min(1.0, max(0.0, value))
    return EvalReport(value, pieces, err, Method.QUADRATURE)

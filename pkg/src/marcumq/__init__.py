"""Generalized Marcum Q-function Q_nu(a, b) of real order nu > 0.

The main evaluator is a power series in b**2/2 whose coefficients are
generalized Laguerre polynomials in a**2/2, summed with an a-priori
truncation bound. Three independent routes are provided for checking it:
the canonical incomplete-gamma series, a Laguerre expansion in a**2/2, and
adaptive quadrature of the defining integral.

>>> round(marcum_q(1, 0.2, 0.6).value, 15)
0.838249985438908
"""
from ._backend import BACKEND
from .alt_series import eval_canonical, eval_gideon_gurland, limit_a_zero
from .errors import (
    IllConditionedError,
    InfeasibleError,
    InternalConsistencyError,
    MarcumDomainError,
    MarcumError,
    NonConvergenceError,
    ToleranceNotMetError,
)
from .laguerre_series import (
    LaguerreCache,
    cache_build,
    eval_laguerre_series,
    p_init,
    p_step,
    partial_sum,
    required_terms,
    tail_bound,
    truncation_bound,
)
from .oracle import quadrature_q
from .records import EvalReport, LaguerreIndex, MarcumArgs, Method, PState, TruncationPolicy

__version__ = "0.1.0"


def marcum_q(nu, a, b, method="laguerre", tol=1e-12, max_terms=500, force=False, cache=None):
    """Evaluate Q_nu(a, b) with the chosen method and return an :class:`EvalReport`.

    ``a = 0`` is answered by the closed-form limit regardless of ``method``.
    """
    args = MarcumArgs(nu, a, b)
    method = Method(method)
    if args.a == 0 or method is Method.LIMIT_A_ZERO:
        if args.a != 0:
            raise MarcumDomainError("limit_a_zero applies only at a = 0")
        return EvalReport(limit_a_zero(args.nu, args.b), 1, 0.0, Method.LIMIT_A_ZERO)
    policy = TruncationPolicy(tol, max_terms)
    if method is Method.LAGUERRE:
        return eval_laguerre_series(args, policy, cache=cache, force=force)
    if method is Method.CANONICAL:
        return eval_canonical(args, policy)
    if method is Method.GIDEON_GURLAND:
        return eval_gideon_gurland(args, policy, force=force)
    return quadrature_q(args, max(tol, 1e-13))


__all__ = [
    "BACKEND",
    "EvalReport",
    "IllConditionedError",
    "InfeasibleError",
    "InternalConsistencyError",
    "LaguerreCache",
    "LaguerreIndex",
    "MarcumArgs",
    "MarcumDomainError",
    "MarcumError",
    "Method",
    "NonConvergenceError",
    "PState",
    "ToleranceNotMetError",
    "TruncationPolicy",
    "cache_build",
    "eval_canonical",
    "eval_gideon_gurland",
    "eval_laguerre_series",
    "limit_a_zero",
    "marcum_q",
    "p_init",
    "p_step",
    "partial_sum",
    "quadrature_q",
    "required_terms",
    "tail_bound",
    "truncation_bound",
]

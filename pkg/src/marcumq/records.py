"""Argument and result records used across the package."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import MarcumDomainError


class Method(str, enum.Enum):
    LAGUERRE = "laguerre"
    CANONICAL = "canonical"
    GIDEON_GURLAND = "gideon_gurland"
    QUADRATURE = "quadrature"
    LIMIT_A_ZERO = "limit_a_zero"

    def __str__(self) -> str:
        return self.value


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise MarcumDomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class MarcumArgs:
    """Arguments (nu, a, b) of Q_nu(a, b).

    ``a = 0`` is accepted here; the series evaluators that need ``a > 0``
    check it themselves.
    """

    nu: float
    a: float
    b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", _finite("nu", self.nu))
        object.__setattr__(self, "a", _finite("a", self.a))
        object.__setattr__(self, "b", _finite("b", self.b))
        if self.nu <= 0:
            raise MarcumDomainError(f"order must satisfy nu > 0, got nu={self.nu!r}")
        if self.a < 0:
            raise MarcumDomainError(f"first argument must satisfy a >= 0, got a={self.a!r}")
        if self.b < 0:
            raise MarcumDomainError(f"second argument must satisfy b >= 0, got b={self.b!r}")

    @property
    def x(self) -> float:
        """a**2 / 2, the Laguerre argument."""
        return 0.5 * self.a * self.a

    @property
    def y(self) -> float:
        """b**2 / 2, the power-series variable."""
        return 0.5 * self.b * self.b


@dataclass(frozen=True)
class TruncationPolicy:
    target_eps: float = 1e-12
    max_terms: int = 500

    def __post_init__(self) -> None:
        if not (self.target_eps > 0 and math.isfinite(self.target_eps)):
            raise MarcumDomainError(f"target_eps must be positive, got {self.target_eps!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 2:
            raise MarcumDomainError(f"max_terms must be an integer >= 2, got {self.max_terms!r}")


@dataclass(frozen=True)
class EvalReport:
    """Result of one evaluation.

    ``error_bound`` is a rigorous truncation bound unless ``bound_is_estimate``
    is set, in which case it is the stopping-rule residual estimate.
    """

    value: float
    terms_used: int
    error_bound: float
    method: Method
    bound_is_estimate: bool = False


@dataclass(frozen=True)
class PState:
    """Rolling state of the P_{nu,n} recurrence: P_n and P_{n-1}."""

    n: int
    p_curr: float
    p_prev: float


@dataclass(frozen=True)
class LaguerreIndex:
    n: int
    alpha: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise MarcumDomainError(f"Laguerre degree must be a nonnegative integer, got {self.n!r}")
        if not self.alpha > -1:
            raise MarcumDomainError(f"Laguerre order must satisfy alpha > -1, got {self.alpha!r}")
        object.__setattr__(self, "n", int(self.n))

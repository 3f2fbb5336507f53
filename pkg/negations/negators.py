from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, TypeAlias

import numpy as np

from negations.errors import DegenerateStatsError, DomainError, ParseError
from negations.settings import DEFAULT_TOLERANCE, Tolerance
from negations.simplex_core import Dist, DistStats, make_dist, stats

FloatOrArray: TypeAlias = "float | np.ndarray"


@dataclass(frozen=True)
class Yager:
    def __str__(self) -> str:
        return "yager"


@dataclass(frozen=True)
class Uniform:
    def __str__(self) -> str:
        return "uniform"


@dataclass(frozen=True)
class Linear:
    """Convex combination alpha * uniform + (1 - alpha) * Yager."""

    alpha: float

    def __post_init__(self) -> None:
        _check_alpha(self.alpha)

    def __str__(self) -> str:
        return f"linear:alpha={self.alpha!r}"


@dataclass(frozen=True)
class Tsallis:
    k: float

    def __post_init__(self) -> None:
        if self.k == 0 or not math.isfinite(self.k):
            raise DomainError(f"tsallis negator needs a finite k != 0, got {self.k!r}")

    def __str__(self) -> str:
        return f"tsallis:k={self.k!r}"


@dataclass(frozen=True)
class Involutive:
    def __str__(self) -> str:
        return "involutive"


NegatorSpec: TypeAlias = Yager | Uniform | Linear | Tsallis | Involutive


@dataclass(frozen=True)
class LinearParams:
    alpha: float
    n1: float  # N(1)
    n0: float  # N(0)
    n: int


@dataclass(frozen=True)
class TsallisContext:
    """Power sum of a distribution, stored as `sum(p_j**k) * exp(-log_scale)`.

    `log_scale` is `max(0, max_j k*log(p_j))`, so it stays at zero for k > 0
    and keeps the powers finite when a negative k meets a tiny value.
    """

    n: int
    k: float
    power_sum: float
    log_scale: float = 0.0


# What a pointwise evaluator needs besides the value itself: the length for
# pd-independent families, the stats or power sum of the whole distribution
# for pd-dependent ones.
Context: TypeAlias = "int | DistStats | TsallisContext"
PointEvaluator: TypeAlias = Callable[[Any, Any], Any]


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")


def is_pd_independent(spec: NegatorSpec) -> bool:
    return isinstance(spec, (Yager, Uniform, Linear))


def yager_point(p: FloatOrArray, n: int) -> FloatOrArray:
    return (1.0 - p) / (n - 1)


def uniform_point(p: FloatOrArray, n: int) -> FloatOrArray:
    if np.ndim(p) == 0:
        return 1.0 / n
    return np.full(np.shape(p), 1.0 / n)


def linear_point(p: FloatOrArray, n: int, alpha: float) -> FloatOrArray:
    _check_alpha(alpha)
    return alpha / n + (1.0 - alpha) * (1.0 - p) / (n - 1)


def involutive_point(p: FloatOrArray, s: DistStats) -> FloatOrArray:
    denominator = s.n * s.mp - 1.0
    if denominator <= 0.0:
        raise DegenerateStatsError(
            f"n * MP - 1 must be positive, got {denominator!r} for MP={s.mp!r}"
        )
    return (s.mp - p) / denominator


def _scaled_powers(p: np.ndarray, k: float, log_scale: float) -> np.ndarray:
    if log_scale == 0.0:
        return np.power(p, k)
    with np.errstate(divide="ignore"):
        return np.exp(k * np.log(p) - log_scale)


def tsallis_point(p: FloatOrArray, ctx: TsallisContext) -> FloatOrArray:
    p = np.asarray(p, dtype=np.float64)
    if ctx.k < 0 and np.any(p == 0.0):
        raise DomainError(f"tsallis negator with k={ctx.k!r} is undefined at p=0")
    unit = math.exp(-ctx.log_scale)
    numerator = unit - _scaled_powers(p, ctx.k, ctx.log_scale)
    result = numerator / (ctx.n * unit - ctx.power_sum) + 0.0
    if not np.all(np.isfinite(result)):
        raise DomainError(
            f"tsallis negator with k={ctx.k!r} overflows at the given values"
        )
    return float(result) if result.ndim == 0 else result


def negated_stats(s: DistStats) -> DistStats:
    """Stats of the involutive negation, derived from the stats alone."""
    denominator = s.n * s.mp - 1.0
    if denominator <= 0.0:
        raise DegenerateStatsError(
            f"n * MP - 1 must be positive, got {denominator!r} for MP={s.mp!r}"
        )
    return DistStats(
        max_p=s.max_p / denominator,
        min_p=s.min_p / denominator,
        mp=s.mp / denominator,
        n=s.n,
    )


def context_of(spec: NegatorSpec, P: Dist) -> Context:
    match spec:
        case Yager() | Uniform() | Linear():
            return P.n
        case Involutive():
            return stats(P)
        case Tsallis(k=k):
            p = P.as_array()
            if k < 0 and np.any(p == 0.0):
                raise DomainError(
                    f"tsallis negator with k={k!r} needs strictly positive values"
                )
            log_scale = 0.0
            if k < 0:
                log_scale = max(0.0, float(np.max(k * np.log(p))))
            return TsallisContext(
                n=P.n,
                k=k,
                power_sum=float(np.sum(_scaled_powers(p, k, log_scale))),
                log_scale=log_scale,
            )
    raise TypeError(f"unknown negator spec: {spec!r}")


def point_evaluator(spec: NegatorSpec) -> PointEvaluator:
    match spec:
        case Yager():
            return yager_point
        case Uniform():
            return uniform_point
        case Linear(alpha=alpha):
            return lambda p, n: linear_point(p, n, alpha)
        case Tsallis():
            return tsallis_point
        case Involutive():
            return involutive_point
    raise TypeError(f"unknown negator spec: {spec!r}")


def negate(spec: NegatorSpec, P: Dist, tol: Tolerance = DEFAULT_TOLERANCE) -> Dist:
    """Apply the negator of `spec` to every value of `P`.

    The result is validated like any other distribution, so a negator that
    broke the simplex would fail here rather than be silently repaired.
    """
    values = point_evaluator(spec)(P.as_array(), context_of(spec, P))
    return make_dist(np.broadcast_to(values, (P.n,)), tol)


def linear_params(
    n: int,
    *,
    alpha: float | None = None,
    n1: float | None = None,
    n0: float | None = None,
) -> LinearParams:
    """Derive all three parameterizations of a linear negator from one."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if sum(value is not None for value in (alpha, n1, n0)) != 1:
        raise DomainError("exactly one of alpha, n1 or n0 must be given")

    if n0 is not None:
        if not 1.0 / n <= n0 <= 1.0 / (n - 1):
            raise DomainError(f"N(0) must lie in [1/{n}, 1/{n - 1}], got {n0!r}")
        n1 = _clip(1.0 - (n - 1) * n0, 0.0, 1.0 / n)
    if n1 is not None:
        if not 0.0 <= n1 <= 1.0 / n:
            raise DomainError(f"N(1) must lie in [0, 1/{n}], got {n1!r}")
        alpha = _clip(n * n1, 0.0, 1.0)

    assert alpha is not None
    _check_alpha(alpha)
    return LinearParams(
        alpha=alpha,
        n1=_clip(alpha / n, 0.0, 1.0 / n),
        n0=_clip(alpha / n + (1.0 - alpha) / (n - 1), 1.0 / n, 1.0 / (n - 1)),
        n=n,
    )


def _clip(value: float, lower: float, upper: float) -> float:
    return min(max(value, lower), upper)


def involutive_segment(P: Dist) -> tuple[tuple[float, float], tuple[float, float]]:
    """End points of the line holding every (p_i, N(p_i)) of the involutive negation."""
    s = stats(P)
    denominator = P.n * s.mp - 1.0
    return (
        (s.min_p, s.max_p / denominator),
        (s.max_p, s.min_p / denominator),
    )


def coincides_with_yager(P: Dist, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    # MP = 1 happens for n = 2 and for point distributions.
    return abs(stats(P).mp - 1.0) <= tol.tol_eq


def parse_negator(text: str) -> NegatorSpec:
    """Parse `yager`, `uniform`, `involutive`, `linear:alpha=<x>` or `tsallis:k=<x>`."""
    name, _, argument = text.strip().lower().partition(":")
    if not argument:
        match name:
            case "yager":
                return Yager()
            case "uniform":
                return Uniform()
            case "involutive":
                return Involutive()

    parameter = {"linear": "alpha", "tsallis": "k"}.get(name)
    if parameter is None:
        raise ParseError(f"unknown negator: {text!r}")

    key, _, raw_value = argument.partition("=")
    if key.strip() != parameter:
        raise ParseError(f"expected {name}:{parameter}=<number>, got {text!r}")
    try:
        value = float(raw_value)
    except ValueError as exc:
        raise ParseError(f"not a number: {raw_value!r}") from exc

    if name == "linear":
        return Linear(alpha=value)
    return Tsallis(k=value)


def format_negator(spec: NegatorSpec) -> str:
    return str(spec)


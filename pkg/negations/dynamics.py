"""Iterated negation: orbits, closed forms for linear negators, convergence."""

from __future__ import annotations

import csv
import io
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from negations.errors import DomainError
from negations.negators import (
    NegatorSpec,
    is_pd_independent,
    negate,
    point_evaluator,
)
from negations.settings import DEFAULT_TOLERANCE, IterationSettings, Tolerance
from negations.simplex_core import (
    Dist,
    dists_equal,
    entropy,
    linf_to_uniform,
    max_entropy,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitStep:
    k: int
    dist: Dist
    entropy: float
    linf: float

    @classmethod
    def at(cls, k: int, dist: Dist) -> OrbitStep:
        return cls(k=k, dist=dist, entropy=entropy(dist), linf=linf_to_uniform(dist))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "dist": self.dist.to_list(),
            "entropy": self.entropy,
            "linf": self.linf,
        }


@dataclass(frozen=True)
class OrbitTrace:
    steps: tuple[OrbitStep, ...]

    @property
    def final(self) -> Dist:
        return self.steps[-1].dist

    def to_dict(self) -> dict:
        return {"steps": [step.to_dict() for step in self.steps]}


@dataclass(frozen=True)
class ContractionFactor:
    a: float
    n: int
    alpha: float
    # |A| = 1: orbits never reach the uniform distribution (n = 2, Yager).
    non_convergent: bool

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "n": self.n,
            "alpha": self.alpha,
            "non_convergent": self.non_convergent,
        }


@dataclass(frozen=True)
class Converged:
    k: int
    limit: Dist

    def to_dict(self) -> dict:
        return {"outcome": "converged", "k": self.k, "limit": self.limit.to_list()}


@dataclass(frozen=True)
class Oscillating:
    period: int
    witness: Dist

    def to_dict(self) -> dict:
        return {
            "outcome": "oscillating",
            "period": self.period,
            "witness": self.witness.to_list(),
        }


@dataclass(frozen=True)
class MaxIterReached:
    last: Dist

    def to_dict(self) -> dict:
        return {"outcome": "max_iter_reached", "last": self.last.to_list()}


ConvergenceOutcome = Converged | Oscillating | MaxIterReached


def iterate(
    spec: NegatorSpec,
    P: Dist,
    k: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> OrbitTrace:
    if k < 0:
        raise DomainError(f"number of steps must be non-negative, got {k}")

    steps = [OrbitStep.at(0, P)]
    current = P
    for step in range(1, k + 1):
        current = negate(spec, current, tol)
        steps.append(OrbitStep.at(step, current))
    return OrbitTrace(steps=tuple(steps))


def _factor(n: int, alpha: float) -> float:
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    return -(1.0 - alpha) / (n - 1)


def contraction_factor(n: int, alpha: float) -> ContractionFactor:
    """A = 1 - n * N(0) of the linear negator with weight `alpha`."""
    a = _factor(n, alpha)
    non_convergent = abs(a) >= 1.0
    if non_convergent:
        logger.warning(
            "contraction factor A=%s for n=%d, alpha=%s: orbits do not converge",
            a,
            n,
            alpha,
        )
    return ContractionFactor(a=a, n=n, alpha=alpha, non_convergent=non_convergent)


def linear_power_point(p: float, n: int, alpha: float, k: int) -> float:
    """k-fold application of the linear negator, in closed form."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    a = _factor(n, alpha)
    if k == 0:
        return p
    return 1.0 / n + a**k * (p - 1.0 / n)


def yager_power_point(p: float, n: int, k: int) -> float:
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if k == 0:
        return p
    return 1.0 / n + (-1) ** k * (p - 1.0 / n) / (n - 1) ** k


def linear_orbit_entropy(P: Dist, alpha: float, k: int) -> float:
    """Entropy of the k-th linear negation of `P`, in closed form."""
    a = _factor(P.n, alpha)
    deviation = P.as_array() - 1.0 / P.n
    return max_entropy(P.n) - a ** (2 * k) * float(np.sum(deviation * deviation))


def point_orbit(spec: NegatorSpec, p: float, n: int, k: int) -> tuple[float, ...]:
    """N^0(p), N^1(p), ..., N^k(p) for a pd-independent negator."""
    if not is_pd_independent(spec):
        raise DomainError(f"{spec} depends on the whole distribution; use iterate")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")

    evaluate = point_evaluator(spec)
    values = [p]
    for _ in range(k):
        values.append(float(evaluate(values[-1], n)))
    return tuple(values)


def converge(
    spec: NegatorSpec,
    P: Dist,
    eps: float = 1e-9,
    max_iter: int = 1000,
    *,
    full_history: bool = False,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ConvergenceOutcome:
    settings = IterationSettings(eps=eps, max_iter=max_iter, full_history=full_history)
    if linf_to_uniform(P) < settings.eps:
        return Converged(k=0, limit=P)

    # Steps 0 and 1 are enough to catch the period-2 orbits of the shipped
    # families; full_history keeps every step.
    history = [P]
    current = P
    for k in range(1, settings.max_iter + 1):
        current = negate(spec, current, tol)
        if linf_to_uniform(current) < settings.eps:
            logger.debug("%s converged after %d steps", spec, k)
            return Converged(k=k, limit=current)

        period = _recurrence_period(history, current, k, tol)
        if period is not None:
            logger.debug("%s oscillates with period %d", spec, period)
            return Oscillating(period=period, witness=current)

        if settings.full_history or len(history) < 2:
            history.append(current)

    logger.warning("%s did not converge within %d steps", spec, settings.max_iter)
    return MaxIterReached(last=current)


def _recurrence_period(
    history: Sequence[Dist],
    current: Dist,
    k: int,
    tol: Tolerance,
) -> int | None:
    for index, previous in enumerate(history):
        period = k - index
        if period >= 2 and dists_equal(previous, current, tol):
            return period
    return None


def _format_float(value: float) -> str:
    return format(value, ".17g")


def trace_to_csv(trace: OrbitTrace) -> str:
    """Header `k,p_1,...,p_n,entropy,linf`, one row per step."""
    n = trace.steps[0].dist.n
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["k", *(f"p_{i}" for i in range(1, n + 1)), "entropy", "linf"])
    for step in trace.steps:
        writer.writerow(
            [
                step.k,
                *map(_format_float, step.dist.values),
                _format_float(step.entropy),
                _format_float(step.linf),
            ]
        )
    return buffer.getvalue()


def point_orbit_to_csv(values: Sequence[float]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["k", "value"])
    for k, value in enumerate(values):
        writer.writerow([k, _format_float(value)])
    return buffer.getvalue()

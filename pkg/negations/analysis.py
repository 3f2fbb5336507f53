"""Contracting / expanding / involutive classification of negators."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from negations.errors import DomainError, InputError, LengthError, LengthMismatchError
from negations.negators import (
    Context,
    NegatorSpec,
    PointEvaluator,
    Tsallis,
    TsallisContext,
    context_of,
    is_pd_independent,
    negate,
    point_evaluator,
)
from negations.settings import DEFAULT_TOLERANCE, ClassificationSettings, Tolerance
from negations.simplex_core import (
    Dist,
    DistStats,
    make_dist,
    max_abs_difference,
    uniform_dist,
)

logger = logging.getLogger(__name__)
_ROUNDING = 16 * float(np.finfo(np.float64).eps)


class Verdict(str, Enum):
    CONTRACTING = "contracting"
    STRICTLY_CONTRACTING = "strictly_contracting"
    EXPANDING = "expanding"
    INVOLUTIVE = "involutive"
    MIXED = "mixed"


@dataclass(frozen=True)
class PointVerdict:
    p: float
    n_p: float
    nn_p: float
    contracting: bool
    strictly_contracting: bool
    expanding: bool
    involutive: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "np": self.n_p,
            "nnp": self.nn_p,
            "flags": {
                "contracting": self.contracting,
                "strictly_contracting": self.strictly_contracting,
                "expanding": self.expanding,
                "involutive": self.involutive,
            },
        }


@dataclass(frozen=True)
class ClassificationReport:
    spec: NegatorSpec
    n: int
    sample_count: int
    verdict: Verdict
    witnesses: tuple[PointVerdict, ...]

    def to_dict(self) -> dict:
        return {
            "spec": str(self.spec),
            "n": self.n,
            "samples": self.sample_count,
            "verdict": self.verdict.value,
            "witnesses": [witness.to_dict() for witness in self.witnesses],
        }


class InvolutionCheck(NamedTuple):
    involutive: bool
    max_error: float


class AxiomCheck(NamedTuple):
    holds: bool
    violation: str | None


def _length_of(context: Context) -> int:
    if isinstance(context, (DistStats, TsallisContext)):
        return context.n
    return context


def _within(x: float, a: float, b: float, slack: float) -> bool:
    return min(a, b) - slack <= x <= max(a, b) + slack


def classify_point(
    negator: PointEvaluator,
    p: float,
    context: Context,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    context_after: Context | None = None,
) -> PointVerdict:
    """Check the contracting / expanding / involution brackets at `p`.

    `context_after` is the context of the negated distribution and is
    required for pd-dependent negators: their second application runs
    against a different distribution than the first.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if context_after is None:
        if isinstance(context, (DistStats, TsallisContext)):
            raise DomainError(
                "a pd-dependent negator needs the context of the negated distribution"
            )
        context_after = context

    n_p = float(negator(p, context))
    nn_p = float(negator(n_p, context_after))
    slack = tol.tol_eq

    involutive = abs(nn_p - p) <= slack
    if involutive:
        contracting = expanding = True
    else:
        contracting = _within(nn_p, p, n_p, slack)
        expanding = _within(p, n_p, nn_p, slack)
        if contracting and expanding:
            # All three values sit inside the slack of each other; settle on
            # the exact brackets.
            contracting = _within(nn_p, p, n_p, 0.0)
            expanding = not contracting

    # The strict slack scales with the bracket, which shrinks near 1/n; the
    # floor absorbs rounding so involutive maps never read as strict.
    edge = max(slack * abs(p - n_p), _ROUNDING)
    strictly_contracting = (
        contracting
        and abs(p - 1.0 / _length_of(context)) > slack
        and min(p, n_p) + edge < nn_p < max(p, n_p) - edge
    )

    return PointVerdict(
        p=p,
        n_p=n_p,
        nn_p=nn_p,
        contracting=contracting,
        strictly_contracting=strictly_contracting,
        expanding=expanding,
        involutive=involutive,
    )


def classify_dist(
    spec: NegatorSpec,
    P: Dist,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> list[PointVerdict]:
    """Point verdicts for every value of `P`.

    The second application runs against the context of the negated
    distribution.
    """
    negator = point_evaluator(spec)
    context = context_of(spec, P)
    context_after = context_of(spec, negate(spec, P, tol))
    return [
        classify_point(negator, p, context, tol, context_after=context_after)
        for p in P.values
    ]


def check_involution(
    spec: NegatorSpec,
    P: Dist,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> InvolutionCheck:
    twice = negate(spec, negate(spec, P, tol), tol)
    error = max_abs_difference(twice, P)
    return InvolutionCheck(involutive=error <= tol.tol_eq, max_error=error)


def classify(
    spec: NegatorSpec,
    n: int,
    samples: int,
    seed: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    grid_points: int = 101,
) -> ClassificationReport:
    """Classify `spec` on length-`n` distributions.

    Pd-independent negators are evaluated on an even grid over [0, 1] plus
    `samples` seeded random points. Pd-dependent ones are evaluated on every
    value of `samples` seeded random distributions.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    settings = ClassificationSettings(
        grid_points=grid_points, samples=samples, seed=seed
    )

    if is_pd_independent(spec):
        rng = np.random.default_rng(settings.seed)
        points = np.concatenate(
            [
                np.linspace(0.0, 1.0, settings.grid_points),
                rng.uniform(0.0, 1.0, settings.samples),
            ]
        )
        negator = point_evaluator(spec)
        verdicts = [classify_point(negator, float(p), n, tol) for p in points]
        all_involutive = all(verdict.involutive for verdict in verdicts)
        sample_count = len(verdicts)
    else:
        verdicts = []
        all_involutive = True
        for offset in range(settings.samples):
            P = random_dist(n, settings.seed + offset)
            all_involutive &= check_involution(spec, P, tol).involutive
            verdicts.extend(classify_dist(spec, P, tol))
        sample_count = settings.samples

    verdict, witnesses = _aggregate(verdicts, all_involutive, n, tol)
    logger.debug("%s at n=%d: %s over %d samples", spec, n, verdict.value, sample_count)
    return ClassificationReport(
        spec=spec,
        n=n,
        sample_count=sample_count,
        verdict=verdict,
        witnesses=tuple(witnesses[:3]),
    )


def _aggregate(
    verdicts: Sequence[PointVerdict],
    all_involutive: bool,
    n: int,
    tol: Tolerance,
) -> tuple[Verdict, list[PointVerdict]]:
    away = [v for v in verdicts if abs(v.p - 1.0 / n) > tol.tol_eq] or list(verdicts)

    if all_involutive and all(v.involutive for v in verdicts):
        return Verdict.INVOLUTIVE, away
    if all(v.contracting for v in verdicts):
        not_strict = [v for v in away if not v.strictly_contracting]
        if not_strict:
            return Verdict.CONTRACTING, not_strict
        return Verdict.STRICTLY_CONTRACTING, away
    if all(v.expanding for v in verdicts):
        return Verdict.EXPANDING, [v for v in verdicts if not v.contracting]

    contracting_only = [v for v in verdicts if v.contracting and not v.expanding]
    expanding_only = [v for v in verdicts if v.expanding and not v.contracting]
    return Verdict.MIXED, contracting_only[:1] + expanding_only[:2]


def fixed_point(
    spec: NegatorSpec,
    n: int,
    context: Dist | None = None,
    *,
    grid_points: int = 101,
) -> float:
    """Locate the fixed point N(p) = p on [0, 1].

    N(p) - p is strictly decreasing, so the grid holds exactly one sign
    change (or exact zero); brentq refines it. Pd-dependent negators are
    evaluated against `context`, the uniform distribution by default.
    """
    if n < 2:
        raise LengthError(f"n must be at least 2, got {n}")
    if context is None:
        context = uniform_dist(n)
    elif context.n != n:
        raise LengthMismatchError(f"context has length {context.n}, expected {n}")

    negator = point_evaluator(spec)
    ctx = context_of(spec, context)

    def gap(p: float) -> float:
        return float(negator(p, ctx)) - p

    grid = np.linspace(0.0, 1.0, grid_points)
    if isinstance(spec, Tsallis) and spec.k < 0:
        grid = grid[1:]
    gaps = [gap(float(p)) for p in grid]

    roots = [float(p) for p, value in zip(grid, gaps) if value == 0.0]
    for index in range(len(grid) - 1):
        if gaps[index] > 0.0 > gaps[index + 1]:
            roots.append(
                brentq(gap, float(grid[index]), float(grid[index + 1]), xtol=1e-15)
            )

    if len(roots) != 1:
        logger.warning(
            "%s at n=%d: found %d fixed points on the grid", spec, n, len(roots)
        )
    if not roots:
        raise DomainError(f"{spec} has no fixed point on [0, 1] for n={n}")
    return min(roots)


def negation_axioms_check(
    P: Dist,
    Q: Dist,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> AxiomCheck:
    """Check that Q is a distribution reversing the order of P."""
    if P.n != Q.n:
        raise LengthMismatchError(f"lengths differ: {P.n} != {Q.n}")
    try:
        make_dist(Q.values, tol)
    except InputError as exc:
        return AxiomCheck(False, f"not a distribution: {exc}")

    p, q = P.as_array(), Q.as_array()
    slack = tol.tol_eq
    order_broken = (p[:, None] < p[None, :]) & (q[:, None] < q[None, :] - slack)
    if order_broken.any():
        i, j = (int(index) + 1 for index in np.argwhere(order_broken)[0])
        return AxiomCheck(
            False, f"p_{i} < p_{j} but q_{i}={q[i - 1]!r} < q_{j}={q[j - 1]!r}"
        )

    tie_broken = (p[:, None] == p[None, :]) & (np.abs(q[:, None] - q[None, :]) > slack)
    if tie_broken.any():
        i, j = (int(index) + 1 for index in np.argwhere(tie_broken)[0])
        return AxiomCheck(False, f"p_{i} = p_{j} but q_{i} != q_{j}")

    return AxiomCheck(True, None)


def random_dist(n: int, seed: int) -> Dist:
    """Seeded flat-Dirichlet draw: normalized standard exponentials."""
    if n < 2:
        raise LengthError(f"a distribution needs n >= 2, got {n}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    draws = np.random.default_rng(seed).standard_exponential(n)
    return make_dist(draws / draws.sum())

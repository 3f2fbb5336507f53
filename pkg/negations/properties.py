"""Executable checks of the mathematical properties of every negator family.

Each entry of `ALL_PROPERTIES` names a property and the function checking
it; `run_properties` runs a selection concurrently and collects one
`PropertyResult` per entry.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field

import numpy as np
from rich.progress import track

from negations.analysis import (
    Verdict,
    check_involution,
    classify,
    classify_dist,
    classify_point,
    fixed_point,
    negation_axioms_check,
    random_dist,
)
from negations.dynamics import (
    Converged,
    Oscillating,
    contraction_factor,
    converge,
    iterate,
    linear_orbit_entropy,
    linear_power_point,
    yager_power_point,
)
from negations.errors import DomainError
from negations.negators import (
    Involutive,
    Linear,
    NegatorSpec,
    Tsallis,
    Uniform,
    Yager,
    involutive_point,
    linear_params,
    linear_point,
    negate,
    negated_stats,
    point_evaluator,
    yager_point,
)
from negations.settings import (
    DEFAULT_TOLERANCE,
    PropertySettings,
    Tolerance,
    stderr_console,
)
from negations.simplex_core import (
    Dist,
    entropy,
    linf_to_uniform,
    make_dist,
    max_abs_difference,
    max_entropy,
    point_dist,
    stats,
    uniform_dist,
)

logger = logging.getLogger(__name__)

EXACT = 1e-12
ALPHA_GRID = tuple(i / 10 for i in range(11))
EXAMPLE_DIST = (0.1, 0.2, 0.15, 0.3, 0.25)
EXAMPLE_NEGATION = (0.3, 0.2, 0.25, 0.1, 0.15)


@dataclass
class Outcome:
    """Accumulates the evidence of one property check."""

    bound: float = EXACT
    cases: int = 0
    max_error: float = 0.0
    failures: list[str] = field(default_factory=list)

    def observe(self, error: float, what: str = "") -> None:
        self.cases += 1
        self.max_error = max(self.max_error, error)
        if not error <= self.bound:
            self.failures.append(f"{what}: error {error:.3g} > {self.bound:.0e}")

    def require(self, condition: bool, what: str) -> None:
        self.cases += 1
        if not condition:
            self.failures.append(what)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class PropertyResult:
    name: str
    category: str
    passed: bool
    cases: int
    max_error: float
    detail: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _lengths(settings: PropertySettings, start: int = 2) -> range:
    return range(start, settings.max_n + 1)


def _families() -> list[NegatorSpec]:
    return [
        Yager(),
        Uniform(),
        *(Linear(alpha=alpha) for alpha in (0.25, 0.5, 0.75)),
        Tsallis(k=2.0),
        Tsallis(k=0.5),
        Tsallis(k=-1.0),
        Involutive(),
    ]


def _pd_independent() -> list[NegatorSpec]:
    return [Yager(), Uniform(), *(Linear(alpha=alpha) for alpha in ALPHA_GRID)]


def _random_dists(
    settings: PropertySettings, n: int, count: int | None = None
) -> Iterator[Dist]:
    for offset in range(count or settings.samples):
        yield random_dist(n, settings.seed + offset)


def check_uniform_fixed_point(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        P_U = uniform_dist(n)
        for spec in _families():
            error = max_abs_difference(negate(spec, P_U, tol), P_U)
            outcome.observe(error, f"{spec} n={n}")

        for spec in _pd_independent():
            value = point_evaluator(spec)(1.0 / n, n)
            outcome.observe(abs(value - 1.0 / n), f"{spec}(1/{n})")
        for P in _random_dists(settings, n, 20):
            value = involutive_point(1.0 / n, stats(P))
            outcome.observe(abs(value - 1.0 / n), f"involutive(1/{n})")
    return outcome


def check_unique_fixed_point(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for spec in [*_pd_independent(), Tsallis(k=2.0), Involutive()]:
            outcome.observe(abs(fixed_point(spec, n) - 1.0 / n), f"{spec} n={n}")
        for P in _random_dists(settings, n, 10):
            root = fixed_point(Involutive(), n, context=P)
            outcome.observe(abs(root - 1.0 / n), f"involutive n={n}")
    return outcome


def check_value_identity(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for spec in _pd_independent():
            negator = point_evaluator(spec)
            n0, n1 = negator(0.0, n), negator(1.0, n)
            outcome.observe(abs(n0 - (1.0 - n1) / (n - 1)), f"{spec} n={n}")
    return outcome


def check_value_ranges(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    grid = np.linspace(0.0, 1.0, 101)
    for n in _lengths(settings):
        for spec in _pd_independent():
            negator = point_evaluator(spec)
            for p in grid:
                value = negator(float(p), n)
                if p >= 1.0 / n:
                    inside = -EXACT <= value <= 1.0 / n + EXACT
                else:
                    inside = 1.0 / n - EXACT <= value <= 1.0 / (n - 1) + EXACT
                outcome.require(inside, f"{spec}({p:.2f}) = {value!r} at n={n}")
    return outcome


def check_linear_representations(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    rng = np.random.default_rng(settings.seed)
    for n in _lengths(settings):
        for alpha in ALPHA_GRID:
            params = linear_params(n, alpha=alpha)
            outcome.observe(abs(params.n1 - (1.0 - (n - 1) * params.n0)), "n1 from n0")
            for p in rng.uniform(0.0, 1.0, 20):
                convex = linear_point(p, n, alpha)
                by_n1 = params.n1 + (1.0 - n * params.n1) * yager_point(p, n)
                by_n0 = params.n0 + (1.0 - n * params.n0) * p
                error = max(abs(convex - by_n1), abs(convex - by_n0))
                outcome.observe(error, f"alpha={alpha} n={n} p={p:.3f}")
    return outcome


def check_tsallis_unit_power(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for P in _random_dists(settings, n, 50):
            tsallis = negate(Tsallis(k=1.0), P, tol)
            error = max_abs_difference(tsallis, negate(Yager(), P, tol))
            outcome.observe(error, f"n={n}")
    return outcome


def check_negation_axioms(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for P in _random_dists(settings, n, 50):
            for spec in _families():
                verdict = negation_axioms_check(P, negate(spec, P, tol), tol)
                outcome.require(verdict.holds, f"{spec} n={n}: {verdict.violation}")
    return outcome


def check_involutive_stats_rule(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for P in _random_dists(settings, n, 100):
            actual = stats(negate(Involutive(), P, tol))
            expected = negated_stats(stats(P))
            error = max(
                abs(actual.max_p - expected.max_p),
                abs(actual.min_p - expected.min_p),
                abs(actual.mp - expected.mp),
            )
            outcome.observe(error, f"n={n}")
    return outcome


def check_involutive_is_involution(
    settings: PropertySettings, tol: Tolerance
) -> Outcome:
    outcome = Outcome(bound=1e-9)
    dists = [(n, P) for n in _lengths(settings) for P in _random_dists(settings, n)]
    dists.append((5, make_dist(EXAMPLE_DIST)))
    for n, P in dists:
        outcome.observe(check_involution(Involutive(), P, tol).max_error, f"n={n}")
    return outcome


def check_example_negation(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    P = make_dist(EXAMPLE_DIST)
    Q = negate(Involutive(), P, tol)
    outcome.observe(max_abs_difference(Q, make_dist(EXAMPLE_NEGATION)), "negation")
    twice = negate(Involutive(), Q, tol)
    outcome.observe(max_abs_difference(twice, P), "double negation")
    return outcome


def check_involutive_sign_pattern(
    settings: PropertySettings, tol: Tolerance
) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for P in _random_dists(settings, n, 100):
            s = stats(P)
            for p in P.values:
                value = involutive_point(p, s)
                if p < 1.0 / n - tol.tol_eq:
                    outcome.require(value > 1.0 / n, f"N({p!r}) = {value!r} at n={n}")
                elif p > 1.0 / n + tol.tol_eq:
                    outcome.require(value < 1.0 / n, f"N({p!r}) = {value!r} at n={n}")
    return outcome


def check_linear_closed_form(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    rng = np.random.default_rng(settings.seed)
    for _ in range(10 * settings.samples):
        n = int(rng.integers(2, settings.max_n + 1))
        alpha = float(rng.choice(ALPHA_GRID))
        p = float(rng.uniform(0.0, 1.0))
        k = int(rng.integers(0, 31))

        value = p
        for _ in range(k):
            value = linear_point(value, n, alpha)
        outcome.observe(abs(value - linear_power_point(p, n, alpha, k)), f"n={n} k={k}")
        if alpha == 0.0:
            yager = yager_power_point(p, n, k)
            outcome.observe(abs(value - yager), f"yager n={n} k={k}")
    return outcome


def check_linear_rate(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for alpha in ALPHA_GRID:
            a = contraction_factor(n, alpha).a
            for P in _random_dists(settings, n, 5):
                trace = iterate(Linear(alpha=alpha), P, 20, tol)
                start = linf_to_uniform(P)
                for step in trace.steps:
                    expected = abs(a) ** step.k * start
                    outcome.observe(abs(step.linf - expected), f"n={n} alpha={alpha}")
    return outcome


def check_orbit_entropy(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings):
        for alpha in ALPHA_GRID:
            a = contraction_factor(n, alpha).a
            for P in _random_dists(settings, n, 5):
                trace = iterate(Linear(alpha=alpha), P, 30, tol)
                spread = float(np.sum((P.as_array() - 1.0 / n) ** 2))
                for step in trace.steps:
                    closed = linear_orbit_entropy(P, alpha, step.k)
                    outcome.observe(abs(step.entropy - closed), f"n={n} k={step.k}")
                if not 0.0 < abs(a) < 1.0:
                    continue
                for before, after in zip(trace.steps, trace.steps[1:]):
                    gain = (a ** (2 * before.k) - a ** (2 * after.k)) * spread
                    if gain > EXACT:
                        outcome.require(
                            after.entropy > before.entropy,
                            f"entropy fell at n={n} alpha={alpha} k={after.k}",
                        )
                limit = converge(Linear(alpha=alpha), P, eps=1e-9, tol=tol)
                if isinstance(limit, Converged):
                    outcome.observe(
                        abs(entropy(limit.limit) - max_entropy(n)), f"limit at n={n}"
                    )
    return outcome


def check_linear_convergence(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome(bound=1e-9)
    for n in _lengths(settings):
        for alpha in ALPHA_GRID:
            if contraction_factor(n, alpha).non_convergent:
                continue
            for P in _random_dists(settings, n, 5):
                result = converge(Linear(alpha=alpha), P, eps=1e-9, tol=tol)
                outcome.require(isinstance(result, Converged), f"n={n} alpha={alpha}")
                if isinstance(result, Converged):
                    outcome.observe(
                        max_abs_difference(result.limit, uniform_dist(n)), f"n={n}"
                    )
    return outcome


def check_dichotomy(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    grid = np.linspace(0.0, 1.0, 101)
    verdicts = []
    for n in _lengths(settings):
        for spec in _pd_independent():
            negator = point_evaluator(spec)
            verdicts.extend(classify_point(negator, float(p), n, tol) for p in grid)
        for P in _random_dists(settings, n, 20):
            verdicts.extend(classify_dist(Involutive(), P, tol))

    for verdict in verdicts:
        outcome.require(
            verdict.contracting or verdict.expanding,
            f"neither bracket at p={verdict.p!r}",
        )
        outcome.require(
            verdict.involutive == (verdict.contracting and verdict.expanding),
            f"involution flag inconsistent at p={verdict.p!r}",
        )
    return outcome


def check_pd_independent_non_involutive(
    settings: PropertySettings, tol: Tolerance
) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings, start=3):
        for spec in _pd_independent():
            negator = point_evaluator(spec)
            twice = negator(negator(1.0, n), n)
            outcome.require(
                1.0 / n - EXACT <= twice <= 1.0 / (n - 1) + EXACT and twice != 1.0,
                f"{spec}: N(N(1)) = {twice!r} at n={n}",
            )
            for i in (1, n):
                involution = check_involution(spec, point_dist(n, i), tol)
                outcome.require(
                    not involution.involutive, f"{spec} involutive at n={n}"
                )
    return outcome


def check_strict_contraction(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    for n in _lengths(settings, start=3):
        for alpha in (0.0, 0.25, 0.5, 0.75):
            report = classify(Linear(alpha=alpha), n, 50, settings.seed, tol)
            outcome.require(
                report.verdict is Verdict.STRICTLY_CONTRACTING,
                f"alpha={alpha} n={n}: {report.verdict.value}",
            )
        report = classify(Uniform(), n, 50, settings.seed, tol)
        outcome.require(
            report.verdict is Verdict.CONTRACTING,
            f"uniform n={n}: {report.verdict.value}",
        )
    return outcome


def check_two_outcome_case(settings: PropertySettings, tol: Tolerance) -> Outcome:
    outcome = Outcome()
    factor = contraction_factor(2, 0.0)
    outcome.require(factor.non_convergent and factor.a == -1.0, f"A = {factor.a!r}")

    report = classify(Linear(alpha=0.0), 2, 50, settings.seed, tol)
    outcome.require(
        report.verdict is Verdict.INVOLUTIVE, f"verdict {report.verdict.value}"
    )
    for P in _random_dists(settings, 2, 20):
        result = converge(Yager(), P, tol=tol)
        outcome.require(
            isinstance(result, Oscillating) and result.period == 2,
            f"{P.values}: {result}",
        )
    return outcome


Check = Callable[[PropertySettings, Tolerance], Outcome]


def _entries(category: str, *checks: tuple[str, Check]) -> list[dict]:
    return [
        {"name": name, "category": category, "function": function}
        for name, function in checks
    ]


ALL_PROPERTIES = [
    *_entries(
        "fixed points",
        ("uniform-fixed-point", check_uniform_fixed_point),
        ("unique-fixed-point", check_unique_fixed_point),
    ),
    *_entries(
        "pd-independent",
        ("value-identity", check_value_identity),
        ("value-ranges", check_value_ranges),
        ("linear-representations", check_linear_representations),
    ),
    *_entries(
        "pd-dependent",
        ("tsallis-unit-power", check_tsallis_unit_power),
        ("involutive-stats-rule", check_involutive_stats_rule),
        ("involution", check_involutive_is_involution),
        ("example-negation", check_example_negation),
        ("involutive-sign-pattern", check_involutive_sign_pattern),
    ),
    *_entries(
        "all families",
        ("negation-axioms", check_negation_axioms),
        ("dichotomy", check_dichotomy),
    ),
    *_entries(
        "dynamics",
        ("linear-closed-form", check_linear_closed_form),
        ("linear-rate", check_linear_rate),
        ("orbit-entropy", check_orbit_entropy),
        ("linear-convergence", check_linear_convergence),
    ),
    *_entries(
        "classification",
        ("pd-independent-non-involutive", check_pd_independent_non_involutive),
        ("strict-contraction", check_strict_contraction),
        ("two-outcome-case", check_two_outcome_case),
    ),
]
PROPERTY_NAMES = [entry["name"] for entry in ALL_PROPERTIES]


def run_property(
    entry: dict,
    settings: PropertySettings,
    tol: Tolerance,
) -> PropertyResult:
    logger.debug("Checking property: %s", entry["name"])
    outcome = entry["function"](settings, tol)
    return PropertyResult(
        name=entry["name"],
        category=entry["category"],
        passed=outcome.passed,
        cases=outcome.cases,
        max_error=outcome.max_error,
        detail="; ".join(outcome.failures[:3]) or None,
    )


def run_properties(
    names: Iterable[str] | None = None,
    settings: PropertySettings = PropertySettings(),
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    workers: int = 4,
    progress: bool = False,
) -> list[PropertyResult]:
    """Run the selected checks (all by default) and return results in registry order."""
    selected = ALL_PROPERTIES
    if names is not None:
        wanted = set(names)
        unknown = wanted.difference(PROPERTY_NAMES)
        if unknown:
            raise DomainError(f"unknown properties: {', '.join(sorted(unknown))}")
        selected = [entry for entry in ALL_PROPERTIES if entry["name"] in wanted]

    results: dict[str, PropertyResult] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(run_property, entry, settings, tol): entry
            for entry in selected
        }
        completed = as_completed(futures)
        if progress:
            completed = track(
                completed,
                total=len(futures),
                description="Checking properties",
                console=stderr_console,
            )

        for future in completed:
            entry = futures[future]
            try:
                result = future.result()
            except Exception as exc:
                logger.exception("Property check %s crashed", entry["name"])
                result = PropertyResult(
                    name=entry["name"],
                    category=entry["category"],
                    passed=False,
                    cases=0,
                    max_error=float("nan"),
                    detail=f"{type(exc).__name__}: {exc}",
                )
            results[result.name] = result

    return [results[entry["name"]] for entry in selected]

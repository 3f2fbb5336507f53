import numpy as np
import pytest
from hypothesis import given

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
from negations.errors import DomainError, LengthError, LengthMismatchError
from negations.negators import (
    Involutive,
    Linear,
    Tsallis,
    Uniform,
    Yager,
    context_of,
    involutive_point,
    negate,
    point_evaluator,
    tsallis_point,
    uniform_point,
    yager_point,
)
from negations.settings import DEFAULT_TOLERANCE
from negations.simplex_core import Dist, make_dist, point_dist, stats, uniform_dist
from tests.strategies import dists


class TestClassifyPoint:
    def test_yager_strictly_contracting(self):
        verdict = classify_point(yager_point, 1.0, 3)
        assert verdict.n_p == 0.0
        assert verdict.nn_p == pytest.approx(0.5)
        assert verdict.contracting and verdict.strictly_contracting
        assert not verdict.expanding and not verdict.involutive

    def test_yager_two_outcomes_involutive(self):
        verdict = classify_point(yager_point, 0.3, 2)
        assert verdict.nn_p == pytest.approx(0.3)
        assert verdict.involutive
        assert verdict.contracting and verdict.expanding

    def test_uniform_contracting_not_strict(self):
        verdict = classify_point(uniform_point, 0.9, 4)
        assert verdict.n_p == verdict.nn_p == 0.25
        assert verdict.contracting
        assert not verdict.strictly_contracting

    def test_expanding(self):
        def spread(p, n):
            return 1 / n - 2 * (p - 1 / n)

        verdict = classify_point(spread, 0.3, 4)
        assert verdict.expanding
        assert not verdict.contracting and not verdict.involutive

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75])
    @pytest.mark.parametrize("n", [3, 5, 10])
    def test_strict_just_outside_the_fixed_point(self, alpha, n):
        p = 1.0 / n + 5 * DEFAULT_TOLERANCE.tol_eq
        verdict = classify_point(point_evaluator(Linear(alpha=alpha)), p, n)
        assert min(verdict.p, verdict.n_p) < verdict.nn_p < max(verdict.p, verdict.n_p)
        assert verdict.strictly_contracting

    def test_uniform_never_strict_near_the_fixed_point(self):
        verdict = classify_point(uniform_point, 0.25 + 5e-9, 4)
        assert verdict.contracting
        assert not verdict.strictly_contracting

    @pytest.mark.parametrize("offset", [2e-9, 1e-8, 1e-7])
    def test_yager_two_outcomes_never_strict(self, offset):
        verdict = classify_point(yager_point, 0.5 + offset, 2)
        assert verdict.involutive
        assert not verdict.strictly_contracting

    def test_fixed_point_is_never_strict(self):
        verdict = classify_point(yager_point, 0.25, 4)
        assert verdict.involutive
        assert not verdict.strictly_contracting

    def test_rejects_p(self):
        with pytest.raises(DomainError):
            classify_point(yager_point, 1.5, 3)

    def test_pd_dependent_needs_context_after(self, example_dist):
        with pytest.raises(DomainError):
            classify_point(involutive_point, 0.1, stats(example_dist))
        ctx = context_of(Tsallis(k=2.0), example_dist)
        with pytest.raises(DomainError):
            classify_point(tsallis_point, 0.1, ctx)

    def test_serialization(self):
        payload = classify_point(yager_point, 1.0, 3).to_dict()
        assert set(payload) == {"p", "np", "nnp", "flags"}
        assert payload["flags"]["strictly_contracting"] is True


class TestClassifyDist:
    def test_involutive_uses_rewritten_stats(self, example_dist):
        verdicts = classify_dist(Involutive(), example_dist)
        assert len(verdicts) == 5
        assert all(verdict.involutive for verdict in verdicts)

    @given(dists(min_n=3))
    def test_yager_contracts(self, P):
        assert all(verdict.contracting for verdict in classify_dist(Yager(), P))


class TestClassify:
    def test_linear_strictly_contracting(self):
        report = classify(Linear(alpha=0.5), 5, 100, 0)
        assert report.verdict is Verdict.STRICTLY_CONTRACTING
        assert report.sample_count == 201

    def test_involutive(self):
        report = classify(Involutive(), 5, 50, 0)
        assert report.verdict is Verdict.INVOLUTIVE
        assert report.sample_count == 50

    def test_yager_two_outcomes(self):
        assert classify(Linear(alpha=0.0), 2, 20, 0).verdict is Verdict.INVOLUTIVE

    def test_uniform(self):
        report = classify(Uniform(), 4, 20, 0)
        assert report.verdict is Verdict.CONTRACTING
        assert report.witnesses
        assert not any(witness.strictly_contracting for witness in report.witnesses)

    @pytest.mark.parametrize(
        "spec",
        [Yager(), Uniform(), Linear(alpha=0.3), Tsallis(k=1.0), Involutive()],
        ids=str,
    )
    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_shipped_families_never_mixed(self, spec, n):
        report = classify(spec, n, 20, 1)
        assert report.verdict is not Verdict.MIXED
        assert len(report.witnesses) <= 3

    def test_report_serialization(self):
        payload = classify(Linear(alpha=0.5), 5, 10, 0).to_dict()
        assert payload["spec"] == "linear:alpha=0.5"
        assert payload["verdict"] == "strictly_contracting"
        assert set(payload) == {"spec", "n", "samples", "verdict", "witnesses"}

    def test_deterministic(self):
        first = classify(Tsallis(k=2.0), 4, 10, 7)
        assert classify(Tsallis(k=2.0), 4, 10, 7) == first

    @pytest.mark.parametrize("n, samples, seed", [(1, 10, 0), (3, 0, 0), (3, 10, -1)])
    def test_rejects(self, n, samples, seed):
        with pytest.raises(DomainError):
            classify(Yager(), n, samples, seed)


class TestCheckInvolution:
    def test_example(self, example_dist):
        result = check_involution(Involutive(), example_dist)
        assert result.involutive
        assert result.max_error < 1e-12

    def test_yager_point_dist(self):
        result = check_involution(Yager(), point_dist(3, 1))
        assert not result.involutive
        twice = negate(Yager(), negate(Yager(), point_dist(3, 1)))
        np.testing.assert_allclose(twice.values, (0.5, 0.25, 0.25))

    @given(dists(max_n=2))
    def test_yager_two_outcomes(self, P):
        assert check_involution(Yager(), P).involutive

    @pytest.mark.parametrize("n", range(2, 11))
    def test_involutive_on_random_dists(self, n):
        errors = [
            check_involution(Involutive(), random_dist(n, seed)).max_error
            for seed in range(1000)
        ]
        assert max(errors) < 1e-9


class TestFixedPoint:
    def test_yager(self):
        assert fixed_point(Yager(), 5) == pytest.approx(0.2, abs=1e-12)

    def test_uniform(self):
        assert fixed_point(Uniform(), 2) == pytest.approx(0.5, abs=1e-12)

    def test_involutive_with_context(self, example_dist):
        root = fixed_point(Involutive(), 5, example_dist)
        assert root == pytest.approx(0.2, abs=1e-12)
        assert involutive_point(root, stats(example_dist)) == pytest.approx(0.2)

    @pytest.mark.parametrize("k", [2.0, 0.5, -1.0])
    def test_tsallis_uniform_context(self, k):
        assert fixed_point(Tsallis(k=k), 4) == pytest.approx(0.25, abs=1e-12)

    def test_rejects(self, example_dist):
        with pytest.raises(LengthError):
            fixed_point(Yager(), 1)
        with pytest.raises(LengthMismatchError):
            fixed_point(Involutive(), 4, example_dist)


class TestNegationAxioms:
    def test_involutive_example(self, example_dist):
        Q = negate(Involutive(), example_dist)
        assert negation_axioms_check(example_dist, Q) == (True, None)

    def test_order_not_reversed(self):
        P = make_dist([0.2, 0.8])
        result = negation_axioms_check(P, P)
        assert not result.holds
        assert "p_1 < p_2" in result.violation

    def test_ties(self):
        assert negation_axioms_check(uniform_dist(3), uniform_dist(3)).holds

    def test_not_a_distribution(self):
        result = negation_axioms_check(make_dist([0.2, 0.8]), Dist((0.5, 0.6)))
        assert not result.holds
        assert "not a distribution" in result.violation

    def test_length_mismatch(self, example_dist):
        with pytest.raises(LengthMismatchError):
            negation_axioms_check(example_dist, uniform_dist(3))

    @given(dists())
    def test_every_family(self, P):
        families = (Yager(), Uniform(), Linear(alpha=0.5), Tsallis(k=2.0), Involutive())
        for spec in families:
            assert negation_axioms_check(P, negate(spec, P)).holds


class TestRandomDist:
    def test_deterministic(self):
        assert random_dist(3, 42) == random_dist(3, 42)
        assert random_dist(3, 42) != random_dist(3, 43)

    def test_valid(self):
        P = random_dist(6, 0)
        assert make_dist(P.values) == P

    def test_mean_is_uniform(self):
        samples = np.array([random_dist(3, seed).values for seed in range(10_000)])
        np.testing.assert_allclose(samples.mean(axis=0), 1 / 3, atol=0.01)

    def test_rejects(self):
        with pytest.raises(LengthError):
            random_dist(1, 0)
        with pytest.raises(DomainError):
            random_dist(3, -1)

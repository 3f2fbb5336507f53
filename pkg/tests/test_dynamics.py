import csv
import io
import logging
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from negations.dynamics import (
    Converged,
    MaxIterReached,
    Oscillating,
    contraction_factor,
    converge,
    iterate,
    linear_orbit_entropy,
    linear_power_point,
    point_orbit,
    point_orbit_to_csv,
    trace_to_csv,
    yager_power_point,
)
from negations.errors import DomainError
from negations.negators import Involutive, Linear, Tsallis, Uniform, Yager, linear_point
from negations.simplex_core import entropy, make_dist, point_dist, uniform_dist
from tests.strategies import alphas, dists, probabilities

DATA = Path(__file__).parent / "data"


class TestIterate:
    def test_uniform_is_constant_after_one_step(self, example_dist):
        trace = iterate(Uniform(), example_dist, 3)
        assert [step.k for step in trace.steps] == [0, 1, 2, 3]
        assert trace.steps[0].dist == example_dist
        for step in trace.steps[1:]:
            np.testing.assert_allclose(step.dist.values, uniform_dist(5).values)

    def test_involutive_returns_to_start(self, example_dist):
        trace = iterate(Involutive(), example_dist, 2)
        np.testing.assert_allclose(trace.final.values, example_dist.values, atol=1e-12)

    def test_yager_two_outcomes(self):
        trace = iterate(Yager(), make_dist([0.3, 0.7]), 2)
        np.testing.assert_allclose(
            [step.dist.values for step in trace.steps],
            [(0.3, 0.7), (0.7, 0.3), (0.3, 0.7)],
            atol=1e-15,
        )

    def test_zero_steps(self, example_dist):
        assert iterate(Yager(), example_dist, 0).final == example_dist

    def test_negative_steps(self, example_dist):
        with pytest.raises(DomainError):
            iterate(Yager(), example_dist, -1)

    def test_yager_rate(self):
        trace = iterate(Yager(), point_dist(5, 1), 16)
        for step in trace.steps:
            assert step.linf == pytest.approx(0.8 * 0.25**step.k, abs=1e-12)


class TestClosedForms:
    def test_linear_power_point(self):
        assert linear_power_point(0.42, 4, 0.3, 0) == 0.42
        assert linear_power_point(1.0, 3, 0.0, 2) == pytest.approx(0.5)
        assert linear_power_point(0.9, 6, 1.0, 3) == pytest.approx(1 / 6)

    def test_yager_power_point(self):
        assert yager_power_point(0.0, 5, 1) == pytest.approx(0.25)
        assert yager_power_point(1.0, 3, 2) == pytest.approx(0.5)
        for k in range(0, 8, 2):
            assert yager_power_point(0.3, 2, k) == pytest.approx(0.3)
            assert yager_power_point(0.3, 2, k + 1) == pytest.approx(0.7)

    @given(
        probabilities,
        st.integers(min_value=2, max_value=10),
        st.sampled_from([i / 10 for i in range(11)]),
        st.integers(min_value=0, max_value=30),
    )
    def test_linear_closed_form_matches_iteration(self, p, n, alpha, k):
        value = p
        for _ in range(k):
            value = linear_point(value, n, alpha)
        assert linear_power_point(p, n, alpha, k) == pytest.approx(value, abs=1e-12)
        if alpha == 0.0:
            assert yager_power_point(p, n, k) == pytest.approx(value, abs=1e-12)

    @given(dists(), alphas, st.integers(min_value=0, max_value=20))
    def test_orbit_entropy(self, P, alpha, k):
        direct = entropy(iterate(Linear(alpha=alpha), P, k).final)
        assert linear_orbit_entropy(P, alpha, k) == pytest.approx(direct, abs=1e-12)

    def test_negative_power(self):
        with pytest.raises(DomainError):
            linear_power_point(0.5, 3, 0.5, -1)


class TestContractionFactor:
    def test_yager(self):
        factor = contraction_factor(5, 0.0)
        assert factor.a == pytest.approx(-0.25)
        assert not factor.non_convergent

    def test_uniform(self):
        assert contraction_factor(7, 1.0).a == 0.0

    def test_two_outcomes_flagged(self, caplog):
        with caplog.at_level(logging.WARNING):
            factor = contraction_factor(2, 0.0)
        assert factor.a == -1.0
        assert factor.non_convergent
        assert "do not converge" in caplog.text

    @pytest.mark.parametrize("n, alpha", [(1, 0.5), (3, -0.1), (3, 1.1)])
    def test_rejects(self, n, alpha):
        with pytest.raises(DomainError):
            contraction_factor(n, alpha)


class TestConverge:
    def test_yager_from_point_dist(self):
        outcome = converge(Yager(), point_dist(5, 1), eps=1e-9)
        assert isinstance(outcome, Converged)
        # 0.8 * 0.25**15 is the first value below 1e-9.
        assert outcome.k == 15
        limit = outcome.limit.values
        np.testing.assert_allclose(limit, uniform_dist(5).values, atol=1e-9)

    def test_yager_two_outcomes_oscillate(self):
        outcome = converge(Yager(), make_dist([0.3, 0.7]))
        assert isinstance(outcome, Oscillating)
        assert outcome.period == 2

    def test_involutive_oscillates(self, example_dist):
        outcome = converge(Involutive(), example_dist, full_history=True)
        assert isinstance(outcome, Oscillating)
        assert outcome.period == 2

    def test_uniform_one_step(self, example_dist):
        outcome = converge(Uniform(), example_dist)
        assert isinstance(outcome, Converged)
        assert outcome.k == 1

    def test_already_uniform(self):
        outcome = converge(Tsallis(k=2.0), uniform_dist(4))
        assert outcome == Converged(k=0, limit=uniform_dist(4))

    def test_max_iter(self, caplog):
        with caplog.at_level(logging.WARNING):
            outcome = converge(Yager(), point_dist(5, 1), max_iter=3)
        assert isinstance(outcome, MaxIterReached)
        assert outcome.last.values[0] == pytest.approx(0.2 - 0.8 / 64)
        assert "did not converge" in caplog.text

    @pytest.mark.parametrize("kwargs", [{"eps": 0.0}, {"max_iter": 0}])
    def test_rejects_settings(self, example_dist, kwargs):
        with pytest.raises(DomainError):
            converge(Yager(), example_dist, **kwargs)

    def test_to_dict(self, example_dist):
        assert converge(Uniform(), example_dist).to_dict()["outcome"] == "converged"
        payload = converge(Involutive(), example_dist).to_dict()
        assert payload["outcome"] == "oscillating"
        assert payload["period"] == 2


class TestPointOrbit:
    def test_yager(self):
        values = point_orbit(Yager(), 0.9, 3, 2)
        np.testing.assert_allclose(values, (0.9, 0.05, 0.475))

    def test_pd_dependent_rejected(self):
        with pytest.raises(DomainError):
            point_orbit(Involutive(), 0.5, 3, 2)

    def test_csv(self):
        text = point_orbit_to_csv(point_orbit(Linear(alpha=1.0), 0.5, 4, 2))
        assert text == "k,value\n0,0.5\n1,0.25\n2,0.25\n"


def test_involutive_orbit_csv(example_dist):
    text = trace_to_csv(iterate(Involutive(), example_dist, 2))
    produced = list(csv.reader(io.StringIO(text)))
    golden = list(csv.reader((DATA / "involutive_orbit.csv").open()))

    assert produced[0] == golden[0]
    assert [row[0] for row in produced] == [row[0] for row in golden]
    for row, expected in zip(produced[1:], golden[1:]):
        np.testing.assert_allclose(
            [float(value) for value in row[1:]],
            [float(value) for value in expected[1:]],
            atol=1e-12,
        )


def test_csv_floats_round_trip_exactly(example_dist):
    trace = iterate(Involutive(), example_dist, 2)
    rows = list(csv.reader(io.StringIO(trace_to_csv(trace))))[1:]
    for row, step in zip(rows, trace.steps, strict=True):
        written = [float(value) for value in row[1:]]
        assert written == [*step.dist.values, step.entropy, step.linf]


def test_dyadic_orbit_csv_is_byte_exact():
    P = make_dist([0.0859375, 0.4140625, 0.25, 0.25])
    text = trace_to_csv(iterate(Involutive(), P, 2))
    assert text == (DATA / "involutive_orbit_dyadic.csv").read_text()

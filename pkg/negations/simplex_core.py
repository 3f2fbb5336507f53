from __future__ import annotations

import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from negations.errors import (
    LengthError,
    LengthMismatchError,
    ParseError,
    PointIndexError,
    RangeError,
    SumError,
)
from negations.settings import DEFAULT_TOLERANCE, Tolerance


@dataclass(frozen=True)
class Dist:
    """A point on the probability simplex, stored in input order.

    Build instances through `make_dist` (or the other constructors below),
    which validate; the dataclass itself performs no checks.
    """

    values: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)

    def to_list(self) -> list[float]:
        return list(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index: int) -> float:
        return self.values[index]


@dataclass(frozen=True)
class DistStats:
    max_p: float
    min_p: float
    mp: float
    n: int

    def to_dict(self) -> dict[str, float | int]:
        return {"max": self.max_p, "min": self.min_p, "mp": self.mp, "n": self.n}


def make_dist(values: Iterable[float], tol: Tolerance = DEFAULT_TOLERANCE) -> Dist:
    """Validate `values` as a distribution. Nothing is renormalized."""
    values = tuple(float(value) for value in values)
    if len(values) < 2:
        raise LengthError(f"a distribution needs at least 2 values, got {len(values)}")

    for index, value in enumerate(values, start=1):
        if not 0.0 <= value <= 1.0:
            raise RangeError(f"value p_{index}={value!r} is outside [0, 1]")

    total = math.fsum(values)
    if abs(total - 1.0) > tol.tol_simplex:
        raise SumError(f"values sum to {total!r}, not 1 (tolerance {tol.tol_simplex})")

    return Dist(values)


def uniform_dist(n: int) -> Dist:
    if n < 2:
        raise LengthError(f"a distribution needs n >= 2, got {n}")
    return make_dist([1.0 / n] * n)


def point_dist(n: int, i: int) -> Dist:
    """The point distribution with unit mass on outcome `i` (1-based)."""
    if n < 2:
        raise LengthError(f"a distribution needs n >= 2, got {n}")
    if not 1 <= i <= n:
        raise PointIndexError(f"index {i} is outside 1..{n}")
    return make_dist(1.0 if j == i else 0.0 for j in range(1, n + 1))


def max_entropy(n: int) -> float:
    return (n - 1) / n


def entropy(P: Dist) -> float:
    """Gini-form entropy: sum of (1 - p_i) * p_i."""
    p = P.as_array()
    return float(np.sum((1.0 - p) * p))


def linf_to_uniform(P: Dist) -> float:
    p = P.as_array()
    return float(np.max(np.abs(p - 1.0 / P.n)))


def stats(P: Dist) -> DistStats:
    p = P.as_array()
    max_p, min_p = float(p.max()), float(p.min())
    return DistStats(max_p=max_p, min_p=min_p, mp=max_p + min_p, n=P.n)


def dists_equal(P: Dist, Q: Dist, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return max_abs_difference(P, Q) <= tol.tol_eq


def max_abs_difference(P: Dist, Q: Dist) -> float:
    if P.n != Q.n:
        raise LengthMismatchError(f"lengths differ: {P.n} != {Q.n}")
    return float(np.max(np.abs(P.as_array() - Q.as_array())))


def parse_dist(text: str, tol: Tolerance = DEFAULT_TOLERANCE) -> Dist:
    """Read a distribution from `0.1,0.2,...`, a JSON array, or `@file.json`."""
    text = text.strip()
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            text = path.read_text().strip()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
        values = _parse_json_array(text)
    elif text.startswith("["):
        values = _parse_json_array(text)
    else:
        try:
            values = [float(item) for item in text.split(",")]
        except ValueError as exc:
            raise ParseError(
                f"not a comma-separated list of numbers: {text!r}"
            ) from exc

    return make_dist(values, tol)


def _parse_json_array(text: str) -> Sequence[float]:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}") from exc

    if not isinstance(values, list) or not all(
        isinstance(value, (int, float)) and not isinstance(value, bool)
        for value in values
    ):
        raise ParseError("expected a JSON array of numbers")
    return values

from __future__ import annotations

import logging
from dataclasses import dataclass

from rich.console import Console
from rich.logging import RichHandler

from negations.errors import DomainError

stderr_console = Console(stderr=True)


@dataclass(frozen=True)
class Tolerance:
    tol_simplex: float = 1e-9
    tol_eq: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("tol_simplex", "tol_eq"):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-6:
                raise DomainError(f"{name} must lie in (0, 1e-6], got {value!r}")


@dataclass(frozen=True)
class IterationSettings:
    eps: float = 1e-9
    max_iter: int = 1000
    # Compare against every previous step instead of steps 0 and 1 only.
    full_history: bool = False

    def __post_init__(self) -> None:
        if not self.eps > 0.0:
            raise DomainError(f"eps must be positive, got {self.eps!r}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter!r}")


@dataclass(frozen=True)
class ClassificationSettings:
    grid_points: int = 101
    samples: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if self.grid_points < 2:
            raise DomainError(f"grid_points must be at least 2, got {self.grid_points}")
        if self.samples < 1:
            raise DomainError(f"samples must be at least 1, got {self.samples}")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")


DEFAULT_TOLERANCE = Tolerance()
DEFAULT_ITERATION = IterationSettings()


def configure_logging(verbose: bool = False) -> None:
    handler = RichHandler(console=stderr_console, show_path=False)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[handler],
        force=True,
    )


@dataclass(frozen=True)
class PropertySettings:
    seed: int = 0
    samples: int = 200
    max_n: int = 10

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise DomainError(f"samples must be at least 1, got {self.samples}")
        if self.max_n < 3:
            raise DomainError(f"max_n must be at least 3, got {self.max_n}")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")

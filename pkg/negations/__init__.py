from negations.analysis import check_involution, classify, fixed_point, random_dist
from negations.dynamics import contraction_factor, converge, iterate
from negations.negators import (
    Involutive,
    Linear,
    NegatorSpec,
    Tsallis,
    Uniform,
    Yager,
    format_negator,
    negate,
    parse_negator,
)
from negations.settings import Tolerance
from negations.simplex_core import (
    Dist,
    entropy,
    make_dist,
    point_dist,
    stats,
    uniform_dist,
)

__all__ = [
    "Dist",
    "Involutive",
    "Linear",
    "NegatorSpec",
    "Tolerance",
    "Tsallis",
    "Uniform",
    "Yager",
    "check_involution",
    "classify",
    "contraction_factor",
    "converge",
    "entropy",
    "fixed_point",
    "format_negator",
    "iterate",
    "make_dist",
    "negate",
    "parse_negator",
    "point_dist",
    "random_dist",
    "stats",
    "uniform_dist",
]

"""Multifractal zeta-functions of self-similar measures on symbolic shift spaces."""
from ._kernels import BACKEND
from ._neginf import NEG_INF, NegInfinity, is_neg_inf
from .coarse import coarse_count, coarse_spectrum_estimate, stopping_set, stopping_words
from .euler import euler_check, euler_log_derivative
from .measures import IfsModel, alpha, beta, legendre, legendre_sup, ratio_range, spectrum_curve
from .statistics import BirkhoffStatistic, RatioStatistic
from .targets import EMPTY, Ball, Box, Point, parse_target
from .variational import BernoulliMeasure, MarkovMeasure, constrained_sup, dimension_functional
from .weights import SimilarityWeights, check_weight_axioms
from .zeta import (
    abscissa_estimate,
    fixed_target_estimate,
    level_sum,
    partial_zeta,
    shrinking_sweep,
)

__version__ = "0.1.0"

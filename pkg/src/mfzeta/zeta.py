"""Filtered level sums, truncated zeta series and abscissa estimates.

The zeta-function of a target C with enlargement r is the Dirichlet-type series
``sum s_w^t`` over words whose statistic lies within max-distance r of C.  It
is split by word length: ``A_n(t) = sum_{|w| = n, filtered} s_w^t``.  Since
``A_n(t)`` grows like ``exp(n g(t))`` with ``g`` strictly decreasing, the root
``t_n`` of ``log A_n(t) = 0`` estimates the abscissa of convergence.

When both the weights and the statistic depend on symbol counts only, the
``N**n`` words of a level collapse to ``C(n+N-1, N-1)`` count classes weighted
by their log-multinomials.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from ._neginf import NEG_INF, as_float, is_neg_inf
from .measures import legendre_sup, ratio_range
from .statistics import RatioStatistic, WordStatistic
from .symbolic import composition_table, words_array
from .targets import EMPTY, Target, interval_of
from .weights import SimilarityWeights, WeightSystem

ROOT_TOL = 1e-12
MAX_WORDS = 1 << 22
DEFAULT_LEVELS = (250, 500, 1000, 2000, 4000)


class EnumerationBudgetExceeded(RuntimeError):
    pass


def default_levels(N: int) -> tuple:
    if N == 2:
        return DEFAULT_LEVELS
    if N == 3:
        return (50, 100, 200, 400)
    return (25, 50, 100, 200)


@dataclass
class LevelTerms:
    """Filtered terms of one level: ``A_n(t) = sum exp(log_mult + t * log_w)``."""

    n: int
    log_mult: np.ndarray
    log_w: np.ndarray

    @property
    def empty(self) -> bool:
        return self.log_mult.size == 0

    def log_sum(self, t: float):
        if self.empty:
            return NEG_INF
        return float(logsumexp(self.log_mult + t * self.log_w))


def _groupable(ws: WeightSystem, stat: WordStatistic) -> bool:
    return isinstance(ws, SimilarityWeights) and stat.composition_measurable


def level_terms(
    ws: WeightSystem,
    stat: WordStatistic,
    n: int,
    target: Target,
    radius: float = 0.0,
    *,
    use_slack: bool = False,
    grouped: bool | None = None,
    max_words: int = MAX_WORDS,
) -> LevelTerms:
    """Collect the length-``n`` terms whose statistic lies in ``B(target, radius)``.

    ``use_slack`` widens the radius by ``stat.slack(n)``.  ``grouped`` forces
    (True) or forbids (False) the count-class path; by default it is used
    whenever possible.
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    r = radius + (stat.slack(n) if use_slack else 0.0)
    empty = LevelTerms(n, np.empty(0), np.empty(0))
    if target is EMPTY:
        return empty
    if grouped is None:
        grouped = _groupable(ws, stat)
    if grouped:
        if not _groupable(ws, stat):
            raise ValueError("grouping needs similarity weights and a count-measurable statistic")
        counts, logm = composition_table(n, stat.N)
        mask = target.contains(stat.values_for_counts(counts), r)
        return LevelTerms(n, logm[mask], ws.log_weight_counts(counts[mask]))
    if stat.N**n > max_words:
        raise EnumerationBudgetExceeded(f"{stat.N}**{n} words exceeds budget {max_words}")
    words = words_array(n, stat.N)
    mask = target.contains(stat.values_for_words(words), r)
    kept = words[mask]
    return LevelTerms(n, np.zeros(len(kept)), ws.log_weights(kept))


@dataclass
class LevelSumReport:
    n: int
    t: float
    log_A: object

    @property
    def empty(self) -> bool:
        return is_neg_inf(self.log_A)


def level_sum(
    ws: WeightSystem,
    stat: WordStatistic,
    t: float,
    n: int,
    target: Target,
    radius: float = 0.0,
    **kwargs,
) -> LevelSumReport:
    """``log A_n(t)``, or ``NEG_INF`` when no word of length ``n`` passes."""
    terms = level_terms(ws, stat, n, target, radius, **kwargs)
    return LevelSumReport(n, float(t), terms.log_sum(t))


@dataclass
class PartialZeta:
    s: float
    max_len: int
    log_value: object
    log_terms: list
    empty: bool
    divergent: bool

    @property
    def value(self) -> float:
        return 0.0 if self.empty else math.exp(self.log_value)

    @property
    def last_log_term(self):
        return self.log_terms[-1]


def partial_zeta(
    ws: WeightSystem,
    stat: WordStatistic,
    s: float,
    max_len: int,
    target: Target,
    radius: float = 0.0,
    **kwargs,
) -> PartialZeta:
    """Truncated series ``sum_{n <= max_len} A_n(s)``, accumulated in log space.

    ``divergent`` is raised when the level terms stop decreasing over the last
    few levels, the signature of ``s`` below the abscissa.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    logs = [level_terms(ws, stat, n, target, radius, **kwargs).log_sum(s) for n in range(1, max_len + 1)]
    finite = [x for x in logs if not is_neg_inf(x)]
    if not finite:
        return PartialZeta(float(s), max_len, NEG_INF, logs, True, False)
    total = float(logsumexp(finite))
    tail = [as_float(x) for x in logs[-4:]]
    divergent = len(finite) >= 2 and all(np.isfinite(tail)) and tail[-1] >= tail[0]
    return PartialZeta(float(s), max_len, total, logs, False, bool(divergent))


def level_root(terms: LevelTerms, tol: float = ROOT_TOL):
    """Root of ``log A_n(t) = 0``; ``NEG_INF`` for an empty level.

    ``log A_n(0) = log(#terms) >= 0`` and ``log A_n(t) <= log A_n(0) + t max(log_w)``,
    which brackets the root in ``[0, log A_n(0) / -max(log_w)]``.
    """
    if terms.empty:
        return NEG_INF, 0.0
    f0 = terms.log_sum(0.0)
    top = float(terms.log_w.max())
    if top >= 0:
        raise ValueError("weights must be < 1")
    lo, hi = 0.0, f0 / -top
    if f0 <= 0.0:
        return 0.0, f0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if terms.log_sum(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return t, terms.log_sum(t) / terms.n


@dataclass
class AbscissaEstimate:
    value: object
    levels: list
    roots: list
    residuals: list
    extrapolated: object = None
    monotone: bool = True
    radius: float = 0.0

    @property
    def is_neg_inf(self) -> bool:
        return is_neg_inf(self.value)


def _extrapolate(levels, roots):
    pts = [(n, t) for n, t in zip(levels, roots) if not is_neg_inf(t)]
    if len(pts) < 3:
        return pts[-1][1] if pts else NEG_INF
    n = np.array([p[0] for p in pts], dtype=np.float64)
    t = np.array([p[1] for p in pts])
    # t_n ~ t_inf + a log(n)/n + b/n
    A = np.column_stack([np.ones_like(n), np.log(n) / n, 1.0 / n])
    coef, *_ = np.linalg.lstsq(A, t, rcond=None)
    return float(coef[0])


def abscissa_estimate(
    ws: WeightSystem,
    stat: WordStatistic,
    target: Target,
    radius: float = 0.0,
    n: int | Sequence[int] = 4000,
    **kwargs,
) -> AbscissaEstimate:
    """Per-level roots ``t_n`` over one level or a ladder of levels.

    ``value`` is the root at the deepest non-empty level, ``NEG_INF`` when every
    level is empty.  ``extrapolated`` fits ``t_inf + a log(n)/n + b/n`` when at
    least three levels are non-empty.
    """
    levels = [int(n)] if np.isscalar(n) else [int(x) for x in n]
    roots, residuals = [], []
    for lvl in levels:
        t, res = level_root(level_terms(ws, stat, lvl, target, radius, **kwargs))
        roots.append(t)
        residuals.append(res)
    finite = [t for t in roots if not is_neg_inf(t)]
    value = finite[-1] if finite else NEG_INF
    monotone = all(b <= a + 1e-9 for a, b in zip(finite, finite[1:])) or all(
        b >= a - 1e-9 for a, b in zip(finite, finite[1:])
    )
    return AbscissaEstimate(value, levels, roots, residuals, _extrapolate(levels, roots), monotone, float(radius))


@dataclass
class ShrinkSweep:
    radii: list
    estimates: list
    non_increasing: bool

    @property
    def values(self) -> list:
        return [e.value for e in self.estimates]


def shrinking_sweep(
    ws: WeightSystem,
    stat: WordStatistic,
    target: Target,
    radii: Sequence[float],
    n: int | Sequence[int] = 4000,
    tol: float = 2 * ROOT_TOL,
    **kwargs,
) -> ShrinkSweep:
    """Abscissa estimates along strictly decreasing positive radii."""
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii) or any(b >= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly decreasing")
    ests = [abscissa_estimate(ws, stat, target, r, n, **kwargs) for r in radii]
    vals = [e.value for e in ests]
    ok = all(b <= (a if is_neg_inf(a) else a + tol) for a, b in zip(vals, vals[1:]))
    return ShrinkSweep(radii, ests, ok)


def fixed_target_condition(stat: WordStatistic, target: Target) -> bool:
    """Interior of the target meets the open ratio range (M = 1 Ratio statistics)."""
    if not isinstance(stat, RatioStatistic) or stat.dim != 1 or target is EMPTY:
        return True
    lo, hi = interval_of(target)
    amin, amax = ratio_range(stat.model)[0]
    return lo < hi and max(lo, amin) < min(hi, amax)


@dataclass
class FixedTargetResult:
    estimate: AbscissaEstimate
    oracle: object
    condition_holds: bool
    warning: str | None = None

    @property
    def value(self):
        return self.estimate.value


def fixed_target_estimate(
    ws: WeightSystem, stat: WordStatistic, target: Target, n: int | Sequence[int] = 4000, **kwargs
) -> FixedTargetResult:
    """Abscissa at radius 0 plus, for Ratio statistics, ``sup beta*`` over the target."""
    ok = fixed_target_condition(stat, target)
    msg = None
    if not ok:
        msg = "target interior does not meet the open ratio range; the estimate need not equal sup f"
        warnings.warn(msg, stacklevel=2)
    est = abscissa_estimate(ws, stat, target, 0.0, n, **kwargs)
    oracle = None
    if isinstance(stat, RatioStatistic) and stat.dim == 1 and target is not EMPTY:
        lo, hi = interval_of(target)
        oracle = legendre_sup(stat.model, lo, hi)
    return FixedTargetResult(est, oracle, ok, msg)


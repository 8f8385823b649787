"""Symbolic coarse spectra from stopping sets.

The stopping set at scale delta is the antichain of words with
``s_w <= delta < s_parent(w)``.  Counting its members whose statistic lands in
``B(C, r)`` and regressing log counts on ``-log delta`` estimates the coarse
spectrum of C.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from ._neginf import NEG_INF
from .statistics import WordStatistic
from .targets import EMPTY, Target
from .weights import SimilarityWeights, WeightSystem

MAX_STOPPING_WORDS = 1 << 22
FLOOR_DEPTH = 40


@dataclass
class StoppingSet:
    """Ragged words: ``symbols[offsets[j]:offsets[j+1]]`` is word j."""

    N: int
    symbols: np.ndarray
    offsets: np.ndarray
    log_weights: np.ndarray

    def __len__(self):
        return len(self.log_weights)

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.offsets)

    def word(self, j: int) -> tuple:
        return tuple(int(x) for x in self.symbols[self.offsets[j] : self.offsets[j + 1]])

    def __iter__(self) -> Iterator[tuple]:
        for j in range(len(self)):
            yield self.word(j)

    def counts(self) -> np.ndarray:
        """Symbol-count vector of every word, shape ``(len, N)``."""
        owner = np.repeat(np.arange(len(self)), self.lengths)
        flat = np.bincount(owner * self.N + self.symbols, minlength=len(self) * self.N)
        return flat.reshape(len(self), self.N)


def _generic_stopping(ws: WeightSystem, N: int, log_delta: float, max_words: int):
    syms, offs, logs = [], [0], []
    stack = [(sym,) for sym in range(N - 1, -1, -1)]
    while stack:
        w = stack.pop()
        lw = ws.log_weight(w)
        if lw <= log_delta:
            if len(logs) >= max_words:
                raise MemoryError(f"stopping set exceeds {max_words} words")
            syms.extend(w)
            offs.append(len(syms))
            logs.append(lw)
        else:
            stack.extend(w + (sym,) for sym in range(N - 1, -1, -1))
    return np.asarray(syms, np.int32), np.asarray(offs, np.int64), np.asarray(logs, np.float64)


def stopping_set(
    ws: WeightSystem,
    delta: float,
    N: int | None = None,
    *,
    floor: float | None = None,
    max_words: int = MAX_STOPPING_WORDS,
) -> StoppingSet:
    """Depth-first stopping frontier at scale ``delta`` (lexicographic order)."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if floor is None:
        floor = ws.s_min**FLOOR_DEPTH
    if delta < floor:
        raise ValueError(f"delta {delta:g} is below the floor {floor:g}")
    log_delta = math.log(delta)
    if isinstance(ws, SimilarityWeights):
        N = ws.N
        syms, offs, logs = _kernels.stopping_words(ws.log_r, log_delta, max_words)
    else:
        if N is None:
            raise ValueError("alphabet size required for general weight systems")
        syms, offs, logs = _generic_stopping(ws, N, log_delta, max_words)
    return StoppingSet(N, syms, offs, logs)


def stopping_words(ws: WeightSystem, delta: float, N: int | None = None, **kwargs) -> Iterator[tuple]:
    return iter(stopping_set(ws, delta, N, **kwargs))


def stopping_values(stat: WordStatistic, sset: StoppingSet) -> np.ndarray:
    """Statistic of every stopping word, shape ``(len, M)``."""
    if len(sset) == 0:
        return np.empty((0, stat.dim))
    if stat.composition_measurable:
        return stat.values_for_counts(sset.counts())
    out = np.empty((len(sset), stat.dim))
    lengths = sset.lengths
    for n in np.unique(lengths):
        idx = np.flatnonzero(lengths == n)
        rows = sset.symbols[sset.offsets[idx][:, None] + np.arange(n)]
        out[idx] = stat.values_for_words(rows)
    return out


@dataclass
class CoarseCount:
    delta: float
    count: int
    r: float
    total: int


def coarse_count(
    ws: WeightSystem, stat: WordStatistic, delta: float, target: Target, r: float = 0.0, **kwargs
) -> CoarseCount:
    """``N_delta(C, r)``: stopping words at ``delta`` with statistic in ``B(C, r)``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    sset = stopping_set(ws, delta, stat.N, **kwargs)
    if target is EMPTY:
        return CoarseCount(delta, 0, r, len(sset))
    mask = target.contains(stopping_values(stat, sset), r)
    return CoarseCount(delta, int(np.count_nonzero(mask)), r, len(sset))


@dataclass
class CoarseSpectrum:
    slope: object
    intercept: float | None
    table: list = field(default_factory=list)
    residuals: list = field(default_factory=list)


def coarse_spectrum_estimate(
    ws: WeightSystem,
    stat: WordStatistic,
    target: Target,
    r: float,
    deltas: Sequence[float],
    **kwargs,
) -> CoarseSpectrum:
    """Least-squares slope of ``log N_delta`` against ``-log delta``.

    Scales with zero count are kept in the table but left out of the fit; the
    slope is ``NEG_INF`` if fewer than two scales have a non-zero count.
    """
    deltas = [float(d) for d in deltas]
    if len(deltas) < 3:
        raise ValueError("need at least three scales")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("scales must be strictly decreasing")
    counts = [coarse_count(ws, stat, d, target, r, **kwargs) for d in deltas]
    table = []
    for c in counts:
        x = -math.log(c.delta)
        ratio = math.log(c.count) / x if c.count else NEG_INF
        table.append({"delta": c.delta, "count": c.count, "ratio": ratio})
    pts = [(-math.log(c.delta), math.log(c.count)) for c in counts if c.count > 0]
    if len(pts) < 2:
        return CoarseSpectrum(NEG_INF, None, table, [])
    x, y = np.array(pts).T
    slope, intercept = np.polyfit(x, y, 1)
    resid = (y - (slope * x + intercept)).tolist()
    return CoarseSpectrum(float(slope), float(intercept), table, resid)

"""Word statistics: the point in R^M that a finite word is filtered on.

``RatioStatistic`` gives the local-dimension vector
``(log p_{m,w} / log r_w)_m`` of a self-similar model; ``BirkhoffStatistic``
gives the average of a k-gram table along the periodic extension of the word.
Both are invariant under taking powers of a word.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .measures import IfsModel
from .symbolic import Composition


class NotCompositionMeasurable(ValueError):
    pass


class WordStatistic:
    dim: int
    composition_measurable: bool
    N: int

    def slack(self, n: int) -> float:
        return 0.0

    def values_for_words(self, words: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def values_for_counts(self, counts: np.ndarray) -> np.ndarray:
        raise NotCompositionMeasurable(f"{type(self).__name__} depends on symbol order")

    def value(self, w: Sequence[int]) -> np.ndarray:
        row = np.asarray(w, dtype=np.int32).reshape(1, -1)
        if row.shape[1] == 0:
            raise ValueError("empty word")
        if row.min() < 0 or row.max() >= self.N:
            raise ValueError(f"word {tuple(w)} has symbols outside [0, {self.N})")
        return self.values_for_words(row)[0]

    def value_on_composition(self, c: Composition | Sequence[int]) -> np.ndarray:
        counts = c.counts if isinstance(c, Composition) else tuple(c)
        return self.values_for_counts(np.asarray([counts]))[0]


class RatioStatistic(WordStatistic):
    composition_measurable = True

    def __init__(self, model: IfsModel):
        self.model = model
        self.N = model.N
        self.dim = model.M
        self._log_p = model.log_p
        self._log_r = model.log_r

    def __repr__(self):
        return f"RatioStatistic({self.model!r})"

    def values_for_counts(self, counts):
        counts = np.asarray(counts, dtype=np.float64)
        return (counts @ self._log_p.T) / (counts @ self._log_r)[:, None]

    def values_for_words(self, words):
        words = np.asarray(words)
        num = self._log_p[:, words].sum(axis=2).T
        den = self._log_r[words].sum(axis=1)
        return num / den[:, None]


class BirkhoffStatistic(WordStatistic):
    """Cyclic average of ``table`` over length-``k`` windows.

    ``table`` holds one value per k-gram in lexicographic order, i.e. it has
    ``N**k`` entries.  ``ratios`` are the contraction ratios of the weights the
    statistic is paired with; only the variational oracle needs them.
    """

    dim = 1

    def __init__(self, table: Sequence[float], k: int, N: int, ratios: Sequence[float] | None = None):
        table = np.asarray(table, dtype=np.float64)
        if k < 1:
            raise ValueError("window length must be >= 1")
        if table.shape != (N**k,):
            raise ValueError(f"table must have N**k = {N ** k} entries, got {table.shape}")
        if not np.all(np.isfinite(table)):
            raise ValueError("table entries must be finite")
        self.table = table
        self.k = int(k)
        self.N = int(N)
        self.ratios = None if ratios is None else np.asarray(ratios, dtype=np.float64)
        self.composition_measurable = self.k == 1

    def __repr__(self):
        return f"BirkhoffStatistic(k={self.k}, N={self.N}, table={self.table.tolist()})"

    def slack(self, n):
        """Bound on how much the average can move when the word's tail changes."""
        return 2.0 * float(np.abs(self.table).max()) * (self.k - 1) / n

    def values_for_words(self, words):
        return _kernels.cyclic_birkhoff(np.asarray(words, dtype=np.intc), self.table, self.k, self.N)[:, None]

    def values_for_counts(self, counts):
        if not self.composition_measurable:
            raise NotCompositionMeasurable("Birkhoff statistics with window k >= 2 depend on symbol order")
        counts = np.asarray(counts, dtype=np.float64)
        return ((counts @ self.table) / counts.sum(axis=1))[:, None]

"""Cylinder weights s_i, carried in log space.

:class:`WeightSystem` is the general contract (exact per-word log weights plus
the distortion constant ``c`` and per-symbol bounds ``s_min``, ``s_max``).
:class:`SimilarityWeights` is the multiplicative case ``s_i = r_{i1} ... r_{in}``.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np


class WeightSystem(ABC):
    c: float = 1.0
    s_min: float
    s_max: float
    multiplicative: bool = False

    @abstractmethod
    def log_weight(self, w: Sequence[int]) -> float:
        """log s_w for a non-empty word."""

    def log_weights(self, words: np.ndarray) -> np.ndarray:
        return np.array([self.log_weight(tuple(row)) for row in np.asarray(words)])


class SimilarityWeights(WeightSystem):
    """Products of contraction ratios; depends on symbol counts only."""

    multiplicative = True
    c = 1.0

    def __init__(self, ratios: Sequence[float]):
        r = np.asarray(ratios, dtype=np.float64)
        if r.ndim != 1 or len(r) < 2:
            raise ValueError("need at least two ratios")
        if not np.all((r > 0) & (r < 1)):
            raise ValueError(f"ratios must lie in (0, 1), got {r.tolist()}")
        self.ratios = r
        self.log_r = np.log(r)
        self.N = len(r)
        self.s_min = float(r.min())
        self.s_max = float(r.max())

    def __repr__(self):
        return f"SimilarityWeights({self.ratios.tolist()})"

    def log_weight(self, w: Sequence[int]) -> float:
        if len(w) == 0:
            raise ValueError("empty word")
        return float(math.fsum(self.log_r[int(x)] for x in w))

    def log_weights(self, words: np.ndarray) -> np.ndarray:
        return self.log_r[np.asarray(words)].sum(axis=1)

    def log_weight_counts(self, counts: np.ndarray) -> np.ndarray:
        """Vectorized ``counts . log r`` for one or many count vectors."""
        return np.asarray(counts, dtype=np.float64) @ self.log_r


class FunctionWeights(WeightSystem):
    """Wraps an arbitrary ``word -> log s_w`` function with declared constants."""

    def __init__(
        self,
        log_weight: Callable[[tuple], float],
        *,
        c: float = 1.0,
        s_min: float,
        s_max: float,
        multiplicative: bool = False,
    ):
        self._fn = log_weight
        self.c = float(c)
        self.s_min = float(s_min)
        self.s_max = float(s_max)
        self.multiplicative = multiplicative

    def log_weight(self, w):
        return float(self._fn(tuple(w)))


@dataclass
class AxiomReport:
    passed: bool
    checked: int
    violation: str | None = None
    pair: tuple | None = None


def check_weight_axioms(
    ws: WeightSystem, pairs: Iterable[tuple[Sequence[int], Sequence[int]]], tol: float = 1e-12
) -> AxiomReport:
    """Check the bounds, quasi-multiplicativity and strict decrease along parents.

    For each pair ``(i, j)``: ``s_min^|w| <= s_w <= s_max^|w| < 1`` for
    ``w`` in ``i, j, ij``; ``s_ij <= s_i s_j <= c s_ij``; and ``s_w < s_parent(w)``.
    Stops at the first violation.  ``tol`` is an absolute slack in log space
    per symbol, for rounding only.
    """
    log_c = math.log(ws.c)
    checked = 0
    if not 0 < ws.s_max < 1:
        return AxiomReport(False, 0, f"s_max = {ws.s_max} not in (0, 1)")
    log_min, log_max = math.log(ws.s_min), math.log(ws.s_max)

    for i, j in pairs:
        i, j = tuple(i), tuple(j)
        ij = i + j
        logs = {w: ws.log_weight(w) for w in (i, j, ij)}
        for w, lw in logs.items():
            n = len(w)
            eps = tol * n
            if not (n * log_min - eps <= lw <= n * log_max + eps):
                return AxiomReport(False, checked, f"bounds fail for {w}: log s = {lw}", (i, j))
            if not lw < 0:
                return AxiomReport(False, checked, f"s_w >= 1 for {w}", (i, j))
        eps = tol * len(ij)
        prod = logs[i] + logs[j]
        if not (logs[ij] <= prod + eps and prod <= log_c + logs[ij] + eps):
            return AxiomReport(False, checked, f"multiplicativity fails for {i}, {j}", (i, j))
        for w in (ij, i, j):
            up = 0.0 if len(w) == 1 else ws.log_weight(w[:-1])
            if not logs[w] < up:
                return AxiomReport(False, checked, f"s_w >= s_parent for {w}", (i, j))
        checked += 1
    if checked == 0:
        raise ValueError("empty sample")
    return AxiomReport(True, checked)

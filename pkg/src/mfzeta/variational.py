"""Variational oracle: maximize ``-h(mu) / int log r dmu`` subject to ``U mu`` in a target.

The supremum is taken over Bernoulli (product) measures, or over memory-1
Markov measures for window-2 Birkhoff statistics.  A dense grid on the
parameter simplex picks the best feasible seed, then SLSQP refines it with the
target membership written as linear-in-U inequalities (every target is a box
under the max-norm).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.special import xlogy

from ._neginf import NEG_INF
from .statistics import BirkhoffStatistic, RatioStatistic, WordStatistic
from .targets import EMPTY, Target

FEAS_TOL = 1e-12


@dataclass(frozen=True)
class BernoulliMeasure:
    pi: tuple

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=np.float64)
        if pi.ndim != 1 or np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-12:
            raise ValueError(f"not a probability vector: {self.pi}")
        object.__setattr__(self, "pi", tuple(pi.tolist()))

    @property
    def marginal(self) -> np.ndarray:
        return np.asarray(self.pi)

    def entropy(self) -> float:
        return float(-xlogy(self.marginal, self.marginal).sum())


@dataclass(frozen=True)
class MarkovMeasure:
    P: tuple

    def __post_init__(self):
        P = np.asarray(self.P, dtype=np.float64)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or np.any(P < 0):
            raise ValueError("transition matrix must be square and non-negative")
        if np.any(np.abs(P.sum(axis=1) - 1.0) > 1e-12):
            raise ValueError("transition rows must sum to 1")
        object.__setattr__(self, "P", tuple(tuple(row) for row in P.tolist()))

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.P)

    @property
    def marginal(self) -> np.ndarray:
        """Stationary vector: least-squares solution of ``pi (P - I) = 0, sum pi = 1``."""
        P = self.matrix
        N = len(P)
        A = np.vstack([P.T - np.eye(N), np.ones(N)])
        b = np.zeros(N + 1)
        b[-1] = 1.0
        pi, *_ = np.linalg.lstsq(A, b, rcond=None)
        pi = np.clip(pi, 0.0, None)
        return pi / pi.sum()

    def entropy(self) -> float:
        P = self.matrix
        return float(-(self.marginal[:, None] * xlogy(P, P)).sum())


def dimension_functional(m: BernoulliMeasure | MarkovMeasure, ratios: Sequence[float]) -> float:
    """``-h(mu) / sum_j pi_j log r_j``."""
    log_r = np.log(np.asarray(ratios, dtype=np.float64))
    return m.entropy() / -float(m.marginal @ log_r)


# Vectorized evaluation over parameter batches.  Each returns (functional, U).


def _log_r_of(stat: WordStatistic) -> np.ndarray:
    if isinstance(stat, RatioStatistic):
        return stat.model.log_r
    if stat.ratios is None:
        raise ValueError("Birkhoff statistic needs ratios for the variational oracle")
    return np.log(stat.ratios)


def _eval_bernoulli(stat: WordStatistic, pi: np.ndarray):
    log_r = _log_r_of(stat)
    den = pi @ log_r
    func = -xlogy(pi, pi).sum(axis=1) / -den
    if isinstance(stat, RatioStatistic):
        U = (pi @ stat.model.log_p.T) / den[:, None]
    else:
        # product measure: k-gram probability is the product of marginals
        probs = np.ones((len(pi), 1))
        for _ in range(stat.k):
            probs = (probs[:, :, None] * pi[:, None, :]).reshape(len(pi), -1)
        U = (probs @ stat.table)[:, None]
    return func, U


def _stationary_batch(P: np.ndarray) -> np.ndarray:
    N = P.shape[1]
    A = np.concatenate([np.swapaxes(P, 1, 2) - np.eye(N), np.ones((len(P), 1, N))], axis=1)
    b = np.zeros((len(P), N + 1))
    b[:, -1] = 1.0
    pi = (np.linalg.pinv(A) @ b[..., None])[..., 0]
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum(axis=1, keepdims=True)


def _eval_markov(stat: WordStatistic, P: np.ndarray):
    pi = _stationary_batch(P)
    log_r = _log_r_of(stat)
    den = pi @ log_r
    h = -(pi[:, :, None] * xlogy(P, P)).sum(axis=(1, 2))
    func = h / -den
    if isinstance(stat, RatioStatistic):
        U = (pi @ stat.model.log_p.T) / den[:, None]
    else:
        probs = pi
        for _ in range(stat.k - 1):
            K = probs.shape[1]
            last = np.arange(K) % P.shape[1]
            probs = (probs[:, :, None] * P[:, last, :]).reshape(len(P), -1)
        U = (probs @ stat.table)[:, None]
    return func, U


def simplex_grid(N: int, steps: int) -> np.ndarray:
    """All probability vectors with entries in multiples of ``1/steps``."""
    rows = [c for c in itertools.product(range(steps + 1), repeat=N - 1) if sum(c) <= steps]
    arr = np.array(rows, dtype=np.float64)
    return np.column_stack([arr, steps - arr.sum(axis=1)]) / steps


def _bernoulli_steps(N: int) -> int:
    return {2: 1000, 3: 200}.get(N, 40)


def _markov_grid(N: int) -> np.ndarray:
    steps = {2: 200, 3: 8}.get(N)
    if steps is None:
        raise ValueError("Markov oracle supports N <= 3")
    rows = simplex_grid(N, steps)
    idx = itertools.product(range(len(rows)), repeat=N)
    return np.array([rows[list(i)] for i in idx])


@dataclass
class VariationalResult:
    value: object
    measure: BernoulliMeasure | MarkovMeasure | None
    feasible: bool
    U: list | None = None


def constrained_sup(
    stat: WordStatistic,
    target: Target,
    radius: float = 0.0,
    family: str = "bernoulli",
    *,
    refine: bool = True,
) -> VariationalResult:
    """Sup of the dimension functional over the family with ``U mu`` in ``B(target, radius)``."""
    if target is EMPTY:
        return VariationalResult(NEG_INF, None, False)
    if target.dim != stat.dim:
        raise ValueError(f"target has dimension {target.dim}, statistic {stat.dim}")
    lo, hi = target.bounds()
    lo, hi = lo - radius, hi + radius
    N = stat.N

    if family == "bernoulli":
        params = simplex_grid(N, _bernoulli_steps(N))
        evaluate = _eval_bernoulli
    elif family in ("markov", "markov1"):
        params = _markov_grid(N)
        evaluate = _eval_markov
    else:
        raise ValueError(f"unknown family {family!r}")

    func, U = evaluate(stat, params)
    feas = np.all((U >= lo - FEAS_TOL) & (U <= hi + FEAS_TOL), axis=1)
    if not feas.any():
        return VariationalResult(NEG_INF, None, False)
    cand = np.where(feas, func, -np.inf)
    best = int(np.argmax(cand))
    x_best, f_best = params[best], float(func[best])

    if refine:
        x_new, f_new = _refine(stat, evaluate, x_best, lo, hi)
        if x_new is not None and f_new > f_best:
            x_best, f_best = x_new, f_new

    measure = BernoulliMeasure(tuple(x_best)) if family == "bernoulli" else MarkovMeasure(x_best)
    _, Ub = evaluate(stat, x_best[None])
    return VariationalResult(f_best, measure, True, Ub[0].tolist())


def _refine(stat, evaluate, x0, lo, hi):
    shape = x0.shape
    n_rows = 1 if x0.ndim == 1 else shape[0]

    def unpack(z):
        z = np.clip(z, 0.0, 1.0).reshape(shape)
        return z / z.sum(axis=-1, keepdims=True)

    def f(z):
        return -float(evaluate(stat, unpack(z)[None])[0][0])

    def U(z):
        return evaluate(stat, unpack(z)[None])[1][0]

    def row_sums(z):
        return z.reshape(n_rows, -1).sum(axis=1) - 1.0

    cons = [
        {"type": "eq", "fun": row_sums},
        {"type": "ineq", "fun": lambda z: U(z) - lo},
        {"type": "ineq", "fun": lambda z: hi - U(z)},
    ]
    with np.errstate(all="ignore"):
        res = minimize(
            f,
            x0.ravel(),
            method="SLSQP",
            bounds=[(0.0, 1.0)] * x0.size,
            constraints=cons,
            options={"ftol": 1e-14, "maxiter": 500},
        )
    z = unpack(res.x)
    Uz = evaluate(stat, z[None])[1][0]
    if not np.all(np.isfinite(Uz)) or np.any(Uz < lo - FEAS_TOL) or np.any(Uz > hi + FEAS_TOL):
        return None, -np.inf
    val = float(evaluate(stat, z[None])[0][0])
    return (z, val) if np.isfinite(val) else (None, -np.inf)

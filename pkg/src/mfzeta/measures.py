"""Self-similar measures and their analytic multifractal spectrum.

For an IFS with ratios ``r_i`` and M stacked probability vectors ``p_{m,i}``
the exponent ``beta(q)`` solves

    sum_i exp(sum_m q_m log p_{m,i} + beta log r_i) = 1,

``alpha(q) = -grad beta(q)``, and the spectrum is the Legendre transform
``beta*(a) = inf_q (<a|q> + beta(q))``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import logsumexp

from ._neginf import NEG_INF

ROW_SUM_TOL = 1e-12
BETA_TOL = 1e-13
Q_CAP = 200.0
GRID_Q = 30.0
GRID_POINTS = 21


class NumericalError(RuntimeError):
    """A root bracket or minimization failed to converge."""


@dataclass(frozen=True)
class IfsModel:
    """Contraction ratios ``r`` (length N) and an ``M x N`` probability matrix."""

    ratios: tuple
    probabilities: tuple

    def __post_init__(self):
        r = np.asarray(self.ratios, dtype=np.float64)
        P = np.atleast_2d(np.asarray(self.probabilities, dtype=np.float64))
        if r.ndim != 1 or len(r) < 2:
            raise ValueError("need at least two contraction ratios")
        if not np.all((r > 0) & (r < 1)):
            raise ValueError(f"ratios must lie in (0, 1), got {r.tolist()}")
        if P.shape[1] != len(r):
            raise ValueError(f"probability rows have {P.shape[1]} entries, expected {len(r)}")
        if not np.all((P > 0) & (P < 1)):
            raise ValueError("probabilities must lie in (0, 1)")
        bad = np.abs(P.sum(axis=1) - 1.0) > ROW_SUM_TOL
        if bad.any():
            raise ValueError(f"probability rows {np.flatnonzero(bad).tolist()} do not sum to 1")
        object.__setattr__(self, "ratios", tuple(r.tolist()))
        object.__setattr__(self, "probabilities", tuple(tuple(row) for row in P.tolist()))

    @property
    def N(self) -> int:
        return len(self.ratios)

    @property
    def M(self) -> int:
        return len(self.probabilities)

    @property
    def log_r(self) -> np.ndarray:
        return np.log(np.asarray(self.ratios))

    @property
    def log_p(self) -> np.ndarray:
        """``M x N`` matrix of log p_{m,i}."""
        return np.log(np.asarray(self.probabilities))

    def row(self, m: int) -> "IfsModel":
        return IfsModel(self.ratios, (self.probabilities[m],))


def _as_q(model: IfsModel, q) -> np.ndarray:
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    if q.shape != (model.M,):
        raise ValueError(f"q must have {model.M} coordinates")
    if not np.all(np.isfinite(q)):
        raise ValueError("q must be finite")
    return q


def _pressure_sum(a, log_r, b: float) -> float:
    """log sum_i exp(a_i + b log r_i); strictly decreasing in b.

    Plain floats: N is small and this runs inside nested bisections.
    """
    xs = [ai + b * li for ai, li in zip(a, log_r)]
    top = max(xs)
    return top + math.log(math.fsum(math.exp(x - top) for x in xs))


def beta(model: IfsModel, q) -> float:
    """Solve the pressure equation for beta(q) inside a doubling bracket."""
    q = _as_q(model, q)
    a = (q @ model.log_p).tolist()
    log_r = model.log_r.tolist()
    lo_r = min(abs(x) for x in log_r)
    half = float(np.abs(q).sum() * np.abs(model.log_p).max() / lo_r + 1.0)
    lo, hi = -half, half
    for _ in range(200):
        if _pressure_sum(a, log_r, lo) >= 0.0 and _pressure_sum(a, log_r, hi) <= 0.0:
            break
        lo, hi = 2.0 * lo, 2.0 * hi
    else:
        raise NumericalError(f"no bracket for beta at q={q.tolist()}")
    # Brent on the doubled bracket: bisection steps guarantee progress, and the
    # pressure is smooth enough that interpolation usually finishes in ~10 calls
    return brentq(lambda b: _pressure_sum(a, log_r, b), lo, hi, xtol=BETA_TOL, rtol=4 * np.finfo(float).eps)


def beta_residual(model: IfsModel, q, b: float) -> float:
    q = _as_q(model, q)
    return float(np.exp(q @ model.log_p + b * model.log_r).sum() - 1.0)


def _gibbs(model: IfsModel, q: np.ndarray, b: float) -> np.ndarray:
    lw = q @ model.log_p + b * model.log_r
    return np.exp(lw - logsumexp(lw))


def alpha(model: IfsModel, q) -> np.ndarray:
    """``-grad beta(q)``: ratios of Gibbs-weighted log p to log r."""
    q = _as_q(model, q)
    b = beta(model, q)
    if model.M == 1:
        # scalar path for the nested root searches of the Legendre transform
        lp, lr = model.log_p[0].tolist(), model.log_r.tolist()
        ws = [math.exp(q[0] * x + b * y) for x, y in zip(lp, lr)]
        num = math.fsum(w * x for w, x in zip(ws, lp))
        den = math.fsum(w * y for w, y in zip(ws, lr))
        return np.array([num / den])
    w = _gibbs(model, q, b)
    return (model.log_p @ w) / (model.log_r @ w)


def ratio_range(model: IfsModel) -> np.ndarray:
    """Per-coordinate ``[min_i, max_i]`` of ``log p_{m,i} / log r_i`` (shape ``M x 2``)."""
    ratios = model.log_p / model.log_r
    return np.column_stack([ratios.min(axis=1), ratios.max(axis=1)])


def degenerate_dimension(model: IfsModel, tol: float = 1e-12) -> float | None:
    """If every row has ``p_i = r_i**s`` for one ``s``, return the point spectrum.

    Only meaningful for M = 1; returns ``None`` when the spectrum is not a point.
    """
    if model.M != 1:
        return None
    ratios = model.log_p[0] / model.log_r
    if np.ptp(ratios) <= tol:
        return float(ratios.mean())
    return None


@dataclass
class LegendreResult:
    value: object
    q: np.ndarray | None = None
    boundary: bool = False


def _legendre_1d(model: IfsModel, a: float) -> LegendreResult:
    lo_a, hi_a = ratio_range(model)[0]
    eps = 1e-12 * max(1.0, abs(a))
    if a < lo_a - eps or a > hi_a + eps:
        return LegendreResult(NEG_INF)

    def g(q):
        return a * q + beta(model, [q])

    def alpha1(q):
        return float(alpha(model, [q])[0])

    if a <= lo_a + eps or a >= hi_a - eps:
        # endpoint: inf is a limit, alpha(q) -> alpha_min as q -> +inf
        qe = Q_CAP if a <= lo_a + eps else -Q_CAP
        return LegendreResult(g(qe), np.array([qe]), boundary=True)

    # alpha(q) is non-increasing; find q with alpha(q) = a
    lo, hi = -1.0, 1.0
    while alpha1(lo) < a:
        lo *= 2.0
        if lo < -Q_CAP:
            return LegendreResult(g(-Q_CAP), np.array([-Q_CAP]), boundary=True)
    while alpha1(hi) > a:
        hi *= 2.0
        if hi > Q_CAP:
            return LegendreResult(g(Q_CAP), np.array([Q_CAP]), boundary=True)
    # the objective is flat at the optimum, so a q error of 1e-13 is invisible in the value
    q = brentq(lambda x: alpha1(x) - a, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps)
    return LegendreResult(g(q), np.array([q]))


def _legendre_nd(model: IfsModel, a: np.ndarray) -> LegendreResult:
    box = ratio_range(model)
    eps = 1e-12
    if np.any(a < box[:, 0] - eps) or np.any(a > box[:, 1] + eps):
        return LegendreResult(NEG_INF)

    def g(q):
        return float(a @ q + beta(model, q))

    grid = np.linspace(-GRID_Q, GRID_Q, GRID_POINTS)
    best_q, best = None, math.inf
    for pt in itertools.product(grid, repeat=model.M):
        val = g(np.asarray(pt))
        if val < best:
            best, best_q = val, np.asarray(pt, dtype=np.float64)

    q = best_q.copy()
    # coordinate descent; d g / d q_m = a_m - alpha_m(q) is non-decreasing in q_m
    for _sweep in range(500):
        prev = q.copy()
        for m in range(model.M):

            def dg(x, m=m):
                qq = q.copy()
                qq[m] = x
                return a[m] - alpha(model, qq)[m]

            if dg(-Q_CAP) >= 0.0:
                q[m] = -Q_CAP
                continue
            if dg(Q_CAP) <= 0.0:
                q[m] = Q_CAP
                continue
            lo, hi = -Q_CAP, Q_CAP
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if hi - lo < 1e-12:
                    break
                if dg(mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
            q[m] = 0.5 * (lo + hi)
        if np.max(np.abs(q - prev)) < 1e-11:
            break
    value = min(g(q), best)
    boundary = bool(np.any(np.abs(q) >= Q_CAP))
    return LegendreResult(value, q, boundary)


def legendre_info(model: IfsModel, a) -> LegendreResult:
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    if a.shape != (model.M,):
        raise ValueError(f"alpha must have {model.M} coordinates")
    if model.M == 1:
        return _legendre_1d(model, float(a[0]))
    return _legendre_nd(model, a)


def legendre(model: IfsModel, a):
    """``beta*(a)``: a float, or ``NEG_INF`` outside the attainable range."""
    return legendre_info(model, a).value


def legendre_sup(model: IfsModel, lo: float, hi: float, grid: int = 21) -> object:
    """``sup`` of ``beta*`` over ``[lo, hi]`` for M = 1 (grid, then golden section)."""
    if model.M != 1:
        raise ValueError("legendre_sup is defined for M = 1")
    amin, amax = ratio_range(model)[0]
    lo, hi = max(lo, amin), min(hi, amax)
    if lo > hi:
        return NEG_INF
    if lo == hi:
        return legendre(model, lo)
    xs = np.linspace(lo, hi, grid)
    vals = np.array([float(legendre(model, x)) for x in xs])
    k = int(np.argmax(vals))
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, grid - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = float(legendre(model, c)), float(legendre(model, d))
    while b - a > 1e-10:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = float(legendre(model, c))
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = float(legendre(model, d))
    return max(vals[k], fc, fd)


@dataclass
class SpectrumSample:
    q: list
    beta: float
    alpha: list
    f: float


@dataclass
class SpectrumCurve:
    samples: list = field(default_factory=list)

    def __len__(self):
        return len(self.samples)


def spectrum_curve(model: IfsModel, qs: Sequence) -> SpectrumCurve:
    """Parametric (q, beta, alpha, f) samples with ``f = <q|alpha> + beta``."""
    out = SpectrumCurve()
    for q in qs:
        q = _as_q(model, q)
        b = beta(model, q)
        w = _gibbs(model, q, b)
        a = (model.log_p @ w) / (model.log_r @ w)
        out.samples.append(SpectrumSample(q.tolist(), b, a.tolist(), float(q @ a + b)))
    return out

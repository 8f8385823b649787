"""Euler product over prime words.

For multiplicative weights every word is uniquely ``u**k`` with ``u`` prime, and
Ratio/Birkhoff filters accept ``u**k`` exactly when they accept ``u``.  Hence the
logarithmic derivative of the Euler product is

    sum_{prime u, filtered} s_u^s / (1 - s_u^s) = sum_{filtered words} s_w^s,

which is checked here against the truncated zeta series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from ._neginf import NEG_INF, is_neg_inf
from .statistics import WordStatistic
from .symbolic import prime_words_array
from .targets import EMPTY, Target
from .weights import WeightSystem
from .zeta import partial_zeta

MAX_PRIME_WORDS = 1 << 22


class NotMultiplicative(ValueError):
    pass


def _filtered_primes(ws, stat, n, target, radius, max_words):
    if stat.N**n > max_words:
        raise MemoryError(f"{stat.N}**{n} words exceeds budget {max_words}")
    primes = prime_words_array(n, stat.N)
    if target is EMPTY or len(primes) == 0:
        return primes[:0]
    return primes[target.contains(stat.values_for_words(primes), radius)]


def euler_log_derivative(
    ws: WeightSystem,
    stat: WordStatistic,
    s: float,
    target: Target,
    radius: float = 0.0,
    max_prime_len: int = 16,
    *,
    max_words: int = MAX_PRIME_WORDS,
) -> float:
    """Closed-form logarithmic derivative, primes of length ``<= max_prime_len``."""
    if not ws.multiplicative:
        raise NotMultiplicative("the Euler product needs multiplicative weights")
    if s <= 0:
        raise ValueError("s must be positive")
    total = 0.0
    for n in range(1, max_prime_len + 1):
        kept = _filtered_primes(ws, stat, n, target, radius, max_words)
        if len(kept):
            y = s * ws.log_weights(kept)
            # x / (1 - x) with x = exp(y) < 1
            total += math.fsum(1.0 / np.expm1(-y))
    return total


def prime_power_level_sum(
    ws: WeightSystem, stat: WordStatistic, s: float, n: int, target: Target, radius: float = 0.0
):
    """``log`` of ``sum s_u^(s n/|u|)`` over filtered primes ``u`` with ``|u|`` dividing n."""
    logs = []
    for d in range(1, n + 1):
        if n % d:
            continue
        kept = _filtered_primes(ws, stat, d, target, radius, MAX_PRIME_WORDS)
        if len(kept):
            logs.append(s * (n // d) * ws.log_weights(kept))
    if not logs:
        return NEG_INF
    return float(logsumexp(np.concatenate(logs)))


@dataclass
class EulerCheck:
    s: float
    max_len: int
    zeta_trunc: float
    prime_form: float
    discrepancy: float
    slow_tail: bool
    empty: bool


def euler_check(
    ws: WeightSystem,
    stat: WordStatistic,
    s: float,
    target: Target,
    radius: float = 0.0,
    max_len: int = 16,
) -> EulerCheck:
    """Compare the truncated zeta series with the truncated prime sum.

    ``slow_tail`` flags a last zeta level carrying more than 1e-3 of the
    total, where truncation dominates the discrepancy.
    """
    if not ws.multiplicative:
        raise NotMultiplicative("the Euler product needs multiplicative weights")
    pz = partial_zeta(ws, stat, s, max_len, target, radius)
    prime = euler_log_derivative(ws, stat, s, target, radius, max_len)
    if pz.empty:
        return EulerCheck(float(s), max_len, 0.0, prime, 0.0 if prime == 0 else math.inf, False, True)
    zeta = pz.value
    disc = abs(zeta - prime) / abs(zeta)
    last = pz.last_log_term
    slow = (not is_neg_inf(last)) and math.exp(last - pz.log_value) > 1e-3
    return EulerCheck(float(s), max_len, zeta, prime, disc, bool(slow or pz.divergent), False)

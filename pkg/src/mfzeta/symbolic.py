"""Finite words over the alphabet {0, ..., N-1}.

A word is a plain tuple of ints and stands for its own cylinder set.  Besides
enumeration this module provides primality (aperiodicity), symbol-count
compositions with their log-multinomial weights, and cyclic Birkhoff averages
along the periodic extension ``www...``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import lgamma
from typing import Iterator, Sequence

import numpy as np
from scipy.special import gammaln

from . import _kernels

Word = tuple


def _check_alphabet(N: int) -> None:
    if int(N) != N or N < 2:
        raise ValueError(f"alphabet size must be an integer >= 2, got {N}")


def _check_length(n: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"word length must be an integer >= 1, got {n}")


def parse_word(text: str) -> Word:
    """``"0110"`` -> ``(0, 1, 1, 0)``; single-digit symbols only."""
    if not text:
        raise ValueError("empty word")
    return tuple(int(ch) for ch in text)


def format_word(w: Sequence[int]) -> str:
    return "".join(str(int(x)) for x in w)


def validate_word(w: Sequence[int], N: int) -> Word:
    w = tuple(int(x) for x in w)
    if not w:
        raise ValueError("words have length >= 1")
    if min(w) < 0 or max(w) >= N:
        raise ValueError(f"word {w} has symbols outside [0, {N})")
    return w


def parent(w: Sequence[int]) -> Word:
    """The word with its last symbol dropped (empty tuple for single symbols)."""
    return tuple(w[:-1])


def enumerate_words(n: int, N: int) -> Iterator[Word]:
    """All ``N**n`` words of length ``n`` in lexicographic order."""
    _check_length(n)
    _check_alphabet(N)
    return itertools.product(range(N), repeat=n)


def words_array(n: int, N: int) -> np.ndarray:
    """Same words as :func:`enumerate_words` as an ``(N**n, n)`` int32 array."""
    _check_length(n)
    _check_alphabet(N)
    idx = np.arange(N**n, dtype=np.int64)
    out = np.empty((N**n, n), dtype=np.int32)
    for col in range(n - 1, -1, -1):
        out[:, col] = idx % N
        idx //= N
    return out


def minimal_period(w: Sequence[int]) -> int:
    return _kernels.minimal_period(np.asarray(w, dtype=np.intc))


def is_prime(w: Sequence[int]) -> bool:
    """True unless ``w`` is ``u`` repeated k >= 2 times."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    p = minimal_period(w)
    return p == n or n % p != 0


def prime_root(w: Sequence[int]) -> tuple[Word, int]:
    """Decompose ``w = u**k`` with ``u`` prime; returns ``(u, k)``."""
    n = len(w)
    p = minimal_period(w)
    if n % p:
        return tuple(w), 1
    return tuple(w[:p]), n // p


def prime_words_array(n: int, N: int) -> np.ndarray:
    """Prime words of length exactly ``n`` as rows, lexicographic order."""
    words = words_array(n, N)
    return words[_kernels.prime_mask(words)]


def enumerate_primes(max_len: int, N: int) -> Iterator[Word]:
    """Prime words of every length ``<= max_len``, shortest first."""
    _check_length(max_len)
    _check_alphabet(N)
    for n in range(1, max_len + 1):
        for row in prime_words_array(n, N):
            yield tuple(int(x) for x in row)


def mobius(n: int) -> int:
    result, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    return -result if m > 1 else result


def aperiodic_count(n: int, N: int) -> int:
    """Number of prime words of length ``n``: sum over d | n of mu(d) N**(n/d)."""
    return sum(mobius(d) * N ** (n // d) for d in range(1, n + 1) if n % d == 0)


def log_multinomial(counts: Sequence[int]) -> float:
    """log of the number of words with the given symbol counts."""
    n = sum(counts)
    return lgamma(n + 1) - sum(lgamma(k + 1) for k in counts)


@dataclass(frozen=True, order=True)
class Composition:
    counts: tuple

    def __post_init__(self):
        counts = tuple(int(k) for k in self.counts)
        if any(k < 0 for k in counts) or sum(counts) < 1:
            raise ValueError(f"invalid composition {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def log_multinomial(self) -> float:
        return log_multinomial(self.counts)

    @classmethod
    def of(cls, w: Sequence[int], N: int) -> "Composition":
        return cls(tuple(np.bincount(np.asarray(w, dtype=np.int64), minlength=N)[:N]))


def _composition_rows(n: int, N: int) -> np.ndarray:
    if N == 1:
        return np.array([[n]], dtype=np.int64)
    blocks = []
    for first in range(n, -1, -1):
        rest = _composition_rows(n - first, N - 1)
        blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


@lru_cache(maxsize=64)
def composition_table(n: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    """All count vectors of length-``n`` words and their log-multinomials.

    Rows are ordered with the count of symbol 0 descending, which matches the
    lexicographic order of the first word of each class.  Arrays are read-only
    because they are cached.
    """
    _check_length(n)
    _check_alphabet(N)
    counts = _composition_rows(n, N)
    logm = gammaln(n + 1.0) - gammaln(counts + 1.0).sum(axis=1)
    counts.flags.writeable = False
    logm.flags.writeable = False
    return counts, logm


def compositions(n: int, N: int) -> Iterator[Composition]:
    counts, _ = composition_table(n, N)
    for row in counts:
        yield Composition(tuple(int(k) for k in row))


def cyclic_birkhoff_average(
    w: Sequence[int], table: Sequence[float], k: int, N: int | None = None
) -> float:
    """Average of ``table`` over the cyclic length-``k`` windows of ``w``.

    ``table`` is indexed by k-grams in lexicographic order (base-N code of the
    window).  When ``N`` is omitted it is inferred from ``len(table) == N**k``.
    """
    if len(w) == 0:
        raise ValueError("empty word")
    if k < 1:
        raise ValueError("window length must be >= 1")
    table = np.asarray(table, dtype=np.float64)
    if N is None:
        N = int(round(len(table) ** (1.0 / k)))
        if N**k != len(table):
            raise ValueError(f"table length {len(table)} is not a perfect {k}-th power")
    row = np.asarray(w, dtype=np.intc).reshape(1, -1)
    return float(_kernels.cyclic_birkhoff(row, table, k, N)[0])

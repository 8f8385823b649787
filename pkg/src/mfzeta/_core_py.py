"""Pure-Python kernels; same signatures and results as the compiled core."""
import numpy as np


def _failure(w):
    n = len(w)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k > 0 and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def minimal_period(w):
    w = [int(x) for x in w]
    if not w:
        raise ValueError("empty word")
    return len(w) - _failure(w)[-1]


def prime_mask(words):
    arr = np.asarray(words)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise ValueError("empty words")
    n = arr.shape[1]
    out = np.empty(arr.shape[0], dtype=bool)
    for row, w in enumerate(arr.tolist()):
        p = n - _failure(w)[-1]
        out[row] = p == n or n % p != 0
    return out


def stopping_words(log_r, log_delta, max_words):
    lr = [float(x) for x in log_r]
    if max(lr) >= 0.0:
        raise ValueError("log ratios must be negative")
    N = len(lr)
    syms, offs, logs = [], [0], []
    # children pushed in reverse so pops come out in lexicographic order
    stack = [((sym,), lr[sym]) for sym in range(N - 1, -1, -1)]
    while stack:
        word, lw = stack.pop()
        if lw <= log_delta:
            if len(logs) >= max_words:
                raise MemoryError(f"stopping set exceeds {max_words} words")
            syms.extend(word)
            offs.append(len(syms))
            logs.append(lw)
        else:
            stack.extend((word + (sym,), lw + lr[sym]) for sym in range(N - 1, -1, -1))
    return (
        np.asarray(syms, dtype=np.int32),
        np.asarray(offs, dtype=np.int64),
        np.asarray(logs, dtype=np.float64),
    )


def cyclic_birkhoff(words, table, k, N):
    arr = np.asarray(words, dtype=np.int64)
    f = np.asarray(table, dtype=np.float64)
    if f.shape[0] != N**k:
        raise ValueError(f"table has {f.shape[0]} entries, expected {N ** k}")
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise ValueError("empty words")
    if arr.size and (arr.min() < 0 or arr.max() >= N):
        raise ValueError("symbol out of range")
    codes = np.zeros(arr.shape, dtype=np.int64)
    for t in range(k):
        codes = codes * N + np.roll(arr, -t, axis=1)
    return f[codes].mean(axis=1)

"""Time the compiled and pure-Python kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one row per kernel with the best wall time for each backend and the
speedup.  Outputs of both backends are compared before timing.
"""
from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from mfzeta import _kernels
from mfzeta.symbolic import words_array


def cases():
    words = words_array(14, 2)
    rng = np.random.default_rng(0)
    long_word = np.ascontiguousarray(np.tile(rng.integers(0, 3, 997), 50), dtype=np.intc)
    table = rng.normal(size=8)
    log_r = np.log(np.array([0.5, 0.3, 0.2]))
    return {
        "minimal_period (len 49850)": lambda k: k.minimal_period(long_word),
        "prime_mask (2^14 words, n=14)": lambda k: k.prime_mask(words),
        "stopping_words (delta=1e-6)": lambda k: k.stopping_words(log_r, math.log(1e-6), 1 << 22),
        "cyclic_birkhoff (k=3, 2^14 words)": lambda k: k.cyclic_birkhoff(words, table, 3, 2),
    }


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b)) or np.allclose(a, b, rtol=1e-13, atol=0)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = _kernels.BACKENDS
    if "cython" not in backends:
        print("compiled core not built; only the Python backend is available")
    print(f"{'kernel':36s} " + " ".join(f"{name:>12s}" for name in sorted(backends)) + "    speedup")
    for label, fn in cases().items():
        outs = {name: fn(mod) for name, mod in backends.items()}
        if len(outs) == 2 and not same(outs["cython"], outs["python"]):
            raise SystemExit(f"backends disagree on {label}")
        times = {name: min(timeit.repeat(lambda m=mod: fn(m), number=1, repeat=args.repeat)) for name, mod in backends.items()}
        speed = f"{times['python'] / times['cython']:9.1f}x" if "cython" in times else "        -"
        print(f"{label:36s} " + " ".join(f"{times[n] * 1e3:10.2f}ms" for n in sorted(times)) + f"  {speed}")


if __name__ == "__main__":
    main()

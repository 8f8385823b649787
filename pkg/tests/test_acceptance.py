"""Acceptance gate: twelve criteria, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line; the lines are printed in the
terminal summary of a pytest run (see conftest.py) and by running this file
directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import contextlib
import math
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

from mfzeta import (
    NEG_INF,
    BirkhoffStatistic,
    Box,
    IfsModel,
    Point,
    RatioStatistic,
    SimilarityWeights,
    abscissa_estimate,
    alpha,
    beta,
    coarse_spectrum_estimate,
    constrained_sup,
    euler_check,
    fixed_target_estimate,
    legendre,
    legendre_sup,
    level_sum,
    ratio_range,
    shrinking_sweep,
)
from mfzeta.cli import COMMANDS, main
from mfzeta.measures import beta_residual
from mfzeta.symbolic import enumerate_words, is_prime, prime_root, words_array
from mfzeta.targets import Ball

from conftest import random_model

RESULTS: list[str] = []

BINOMIAL = IfsModel((0.5, 0.5), ((0.2, 0.8),))
UNIFORM = IfsModel((0.5, 0.5), ((0.5, 0.5),))
MIXED = IfsModel((0.5, 0.5), ((0.2, 0.8), (0.5, 0.5)))
Q_GRID = np.linspace(-10.0, 10.0, 201)
CONFIG = Path(__file__).resolve().parent.parent / "configs" / "binomial.ini"


@contextlib.contextmanager
def criterion(number: int, title: str, budget: float):
    """Time the block, record a PASS/FAIL line, and enforce the time budget."""
    info: dict = {}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        first = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        RESULTS.append(f"[FAIL] {number:2d}. {title} ({elapsed:.2f}s): {first}")
        raise
    elapsed = time.perf_counter() - start
    detail = info.get("detail", "")
    if elapsed > budget:
        RESULTS.append(f"[FAIL] {number:2d}. {title} ({elapsed:.2f}s > {budget:g}s budget) {detail}")
        pytest.fail(f"criterion {number} exceeded {budget}s: {elapsed:.2f}s")
    RESULTS.append(f"[PASS] {number:2d}. {title} ({elapsed:.2f}s) {detail}")


def pair(model):
    return SimilarityWeights(model.ratios), RatioStatistic(model)


def test_01_beta_closed_form():
    with criterion(1, "beta closed form", 1.0) as info:
        err = max(abs(beta(BINOMIAL, [q]) - math.log2(0.2**q + 0.8**q)) for q in Q_GRID)
        info["detail"] = f"max err {err:.2e}"
        assert err < 1e-10


def test_02_legendre_duality():
    with criterion(2, "Legendre duality", 1.0) as info:
        err = 0.0
        for q in Q_GRID:
            a = float(alpha(BINOMIAL, [q])[0])
            err = max(err, abs(legendre(BINOMIAL, a) - (q * a + beta(BINOMIAL, [q]))))
        info["detail"] = f"max err {err:.2e}"
        assert err < 1e-8
        assert legendre(BINOMIAL, 0.1) is NEG_INF
        assert legendre(BINOMIAL, 3.0) is NEG_INF


def test_03_shrinking_targets():
    ws, stat = pair(BINOMIAL)
    with criterion(3, "shrinking targets", 10.0) as info:
        oracle = {a: legendre(BINOMIAL, a) for a in (0.6, 1.0, 1.5)}
        gaps = []
        for a, want in oracle.items():
            sweep = shrinking_sweep(ws, stat, Point(a), (0.2, 0.1, 0.05, 0.02), 4000)
            assert sweep.non_increasing, f"alpha={a}: {sweep.values}"
            gaps.append(abs(sweep.values[-1] - want))
        info["detail"] = "gaps " + ", ".join(f"{g:.4f}" for g in gaps)
        assert max(gaps) < 0.05


def test_04_fixed_targets():
    ws, stat = pair(BINOMIAL)
    with criterion(4, "fixed targets", 10.0) as info:
        want = legendre_sup(BINOMIAL, 0.5, 1.0)
        got = fixed_target_estimate(ws, stat, Box([0.5], [1.0]), 4000).value
        lo, hi = ratio_range(BINOMIAL)[0]
        full = fixed_target_estimate(ws, stat, Box([lo], [hi]), 4000).value
        info["detail"] = f"box gap {abs(got - want):.4f}, full {full:.10f}"
        assert abs(got - want) < 0.02
        assert abs(full - 1.0) < 0.01


def test_05_degenerate_point():
    ws, stat = pair(BINOMIAL)
    with criterion(5, "degenerate point target", 10.0) as info:
        levels = list(range(1, 41)) + [250, 500, 1000, 2000, 4000]
        radii = (0.599, 0.5, 0.3, 0.1, 0.01, 0.0)
        for r in radii:
            est = abscissa_estimate(ws, stat, Point(3.0), r, levels)
            assert est.value is NEG_INF and all(t is NEG_INF for t in est.roots), r
        info["detail"] = f"{len(radii)} radii x {len(levels)} levels empty"


def _random_target(rng, model):
    lo, hi = ratio_range(model)[0]
    kind = rng.integers(3)
    a, b = np.sort(rng.uniform(lo - 0.2, hi + 0.2, 2))
    if kind == 0:
        return Box([a], [b]), 0.0
    if kind == 1:
        return Ball([a], 0.5 * (b - a)), float(rng.uniform(0, 0.1))
    return Point(a), float(rng.uniform(0.02, 0.3))


def test_06_grouped_vs_brute_force():
    rng = np.random.default_rng(20240601)
    with criterion(6, "grouped vs brute-force level sums", 30.0) as info:
        worst, compared = 0.0, 0
        for trial in range(50):
            N = 2 + trial % 2
            model = random_model(rng, N)
            ws, stat = pair(model)
            t = float(rng.uniform(0.0, 2.0))
            target, radius = _random_target(rng, model)
            for n in range(1, 13):
                g = level_sum(ws, stat, t, n, target, radius, grouped=True).log_A
                b = level_sum(ws, stat, t, n, target, radius, grouped=False).log_A
                if b is NEG_INF:
                    assert g is NEG_INF
                    continue
                rel = abs(math.expm1(g - b))
                worst = max(worst, rel)
                compared += 1
        info["detail"] = f"{compared} non-empty levels, worst rel {worst:.1e}"
        assert worst < 1e-9


def _bijection_ok(n: int, N: int) -> bool:
    """Each word of length n is u**k for exactly one prime u, and every such power occurs."""
    seen = set()
    for w in enumerate_words(n, N):
        u, k = prime_root(w)
        if not is_prime(u) or u * k != w or (u, k) in seen:
            return False
        seen.add((u, k))
    powers = {(u, n // d) for d in range(1, n + 1) if n % d == 0 for u in enumerate_words(d, N) if is_prime(u)}
    return seen == powers


def test_07_euler_identity():
    with criterion(7, "Euler identity", 10.0) as info:
        ws, stat = pair(BINOMIAL)
        b = euler_check(ws, stat, 1.6, Box([0.5], [1.5]), 0.0, 16)
        ws, stat = pair(UNIFORM)
        u = euler_check(ws, stat, 2.0, Box([0.0], [2.0]), 0.0, 16)
        info["detail"] = f"binomial {b.discrepancy:.1e}, uniform {u.discrepancy:.1e}"
        assert b.discrepancy < 1e-4
        assert u.discrepancy < 1e-6
        assert all(_bijection_ok(n, 2) for n in range(1, 13))


def test_08_weight_properties():
    rng = np.random.default_rng(41)
    with criterion(8, "weight-system property suite", 5.0) as info:
        checked = 0
        for _ in range(20):
            N = int(rng.integers(2, 4))
            ws = SimilarityWeights(tuple(rng.uniform(0.05, 0.95, N)))
            lo_r, hi_r = min(ws.log_r), max(ws.log_r)
            for n in range(1, 9):
                words = words_array(n, N)
                lw = ws.log_weights(words)
                assert np.all(lw >= n * lo_r - 1e-12) and np.all(lw <= n * hi_r + 1e-12)
                for j in range(1, n):
                    split = ws.log_weights(words[:, :j]) + ws.log_weights(words[:, j:])
                    assert np.allclose(split, lw, rtol=1e-13, atol=0.0)
                if n > 1:
                    assert np.all(lw < ws.log_weights(words[:, :-1]))
                checked += len(words)
        info["detail"] = f"{checked} words"


def test_09_variational_equals_legendre():
    with criterion(9, "variational oracle", 30.0) as info:
        stat = RatioStatistic(BINOMIAL)
        lo, hi = ratio_range(BINOMIAL)[0]
        alphas = [lo + j * (hi - lo) / 12 for j in range(1, 12)]
        gaps = [abs(constrained_sup(stat, Point(a), 1e-3).value - legendre(BINOMIAL, a)) for a in alphas]
        freq = BirkhoffStatistic([1.0, 0.0], 1, 2, ratios=(0.5, 0.5))
        v = constrained_sup(freq, Point(0.3)).value
        h = -(0.3 * math.log(0.3) + 0.7 * math.log(0.7)) / math.log(2)
        info["detail"] = f"worst gap {max(gaps):.1e}, frequency {v:.5f}"
        assert max(gaps) <= 5e-3
        assert abs(v - h) < 1e-3


def test_10_sandwich():
    ws, stat = pair(BINOMIAL)
    with criterion(10, "coarse/zeta/variational sandwich", 30.0) as info:
        target, r = Box([0.5], [1.0]), 0.05
        var = constrained_sup(stat, target, r).value
        slope = coarse_spectrum_estimate(ws, stat, target, r, [2.0**-k for k in range(8, 17)]).slope
        zeta = abscissa_estimate(ws, stat, target, r, 4000).value
        info["detail"] = f"variational {var:.4f}, coarse {slope:.4f}, abscissa {zeta:.4f}"
        assert var <= slope + 0.1
        assert slope <= zeta + 0.1


def test_11_mixed_spectra():
    with criterion(11, "mixed spectra (M = 2)", 60.0) as info:
        grid = np.linspace(-10.0, 10.0, 21)
        res = max(abs(beta_residual(MIXED, [a, b], beta(MIXED, [a, b]))) for a in grid for b in grid)
        stat = RatioStatistic(MIXED)
        gaps = []
        for a1 in (0.5, 0.8, 1.1, 1.5, 2.0):
            want = legendre(MIXED, [a1, 1.0])
            gaps.append(abs(constrained_sup(stat, Point([a1, 1.0]), 1e-3).value - want))
        info["detail"] = f"residual {res:.1e}, worst gap {max(gaps):.1e}"
        assert res < 1e-10
        assert max(gaps) < 0.02


def test_12_cli_determinism(tmp_path):
    with criterion(12, "CLI determinism", 120.0) as info:
        for command in sorted(COMMANDS):
            blobs = []
            for run in ("a", "b"):
                out = tmp_path / run / command
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    assert main([command, "--model", str(CONFIG), "--out", str(out)]) == 0
                blobs.append((out / f"{command}.json").read_bytes())
            assert blobs[0] == blobs[1], command
        info["detail"] = f"{len(COMMANDS)} subcommands"


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
